#pragma once

#include <cstddef>

namespace forcelab {

// Size budgets shared by every module. Exceeding one raises BudgetExceeded
// instead of truncating.
struct Limits {
  std::size_t max_code_bits = std::size_t{1} << 20;
  std::size_t max_level_size = 65536;
  std::size_t max_subsets = std::size_t{1} << 20;
  std::size_t max_structure_size = 64;
  std::size_t max_automorphisms = std::size_t{1} << 16;
  std::size_t max_depth = 3;
  std::size_t max_type_tuples = std::size_t{1} << 22;
  std::size_t max_poset_size = 512;
  std::size_t max_algebra_size = std::size_t{1} << 16;
  std::size_t max_names = 4096;
  std::size_t max_group_size = 5040;
};

}  // namespace forcelab
