#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bcr::detail {

// Walks every cell of a row-major table with shape `cards` (last axis fastest) and
// calls fn(cell, offset) where offset = sum_i digit_i * strides[i]. Used to map a
// table onto a sub-table (strides 0 on dropped axes) or onto a factor's layout.
template <typename Fn>
void for_each_offset(std::span<const std::size_t> cards, std::span<const std::size_t> strides,
                     Fn&& fn) {
  std::size_t total = 1;
  for (auto c : cards) total *= c;
  if (total == 0) return;

  const std::size_t n = cards.size();
  std::vector<std::size_t> digit(n, 0);
  std::size_t offset = 0;
  for (std::size_t cell = 0; cell < total; ++cell) {
    fn(cell, offset);
    for (std::size_t k = n; k-- > 0;) {
      if (++digit[k] < cards[k]) {
        offset += strides[k];
        break;
      }
      offset -= strides[k] * (cards[k] - 1);
      digit[k] = 0;
    }
  }
}

}  // namespace bcr::detail
