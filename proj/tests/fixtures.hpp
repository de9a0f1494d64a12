#ifndef FAIRDIV_TESTS_FIXTURES_HPP
#define FAIRDIV_TESTS_FIXTURES_HPP

#include <string_view>

#include "fairdiv/core.hpp"

namespace fairdiv::fixtures {

// Agent 2 is indifferent between objects 1 and 3.
inline Instance tied_pair() {
  return Instance::from_integers({{8, 2, 1}, {5, 1, 5}});
}

// <14,23> is frustrated on objects {3,4}.
inline Instance frustrated_pair() {
  return Instance::from_integers({{9, 8, 2, 1}, {2, 5, 1, 4}});
}

// <1,23> is sequenceable yet dominated by <23,1>.
inline Instance dominated_pair() {
  return Instance::from_integers({{5, 4, 2}, {8, 2, 1}});
}

// <14|35|2> is envy-free but not sequenceable.
inline Instance envious_triple() {
  return Instance::from_integers(
      {{12, 15, 11, 7, 2}, {2, 12, 7, 15, 11}, {15, 20, 9, 2, 1}});
}

// Single-peaked along 1..6; <12|34|56> is swap-optimal but dominated.
inline Instance peaked_triple() {
  return Instance::from_integers({{1, 2, 3, 4, 5, 6},
                                  {1, 3, 4, 5, 6, 2},
                                  {1, 2, 4, 5, 6, 3}});
}

// <14|3|2> is a competitive equilibrium at prices (1/2,1,1,1/2).
inline Instance priced_triple() {
  return Instance::from_integers(
      {{2, 3, 3, 2}, {2, 3, 4, 1}, {0, 4, 2, 4}});
}

inline Allocation alloc(const Instance& instance, std::string_view text) {
  return parse_allocation(text, instance.agents(), instance.objects());
}

inline ObjectSet objects(std::initializer_list<int> one_based) {
  ObjectSet out;
  for (const int k : one_based) out.insert(k - 1);
  return out;
}

}  // namespace fairdiv::fixtures

#endif  // FAIRDIV_TESTS_FIXTURES_HPP
