#ifndef FAIRDIV_SEQUENCES_HPP
#define FAIRDIV_SEQUENCES_HPP

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// A picking sequence: picks[t] is the agent choosing at step t.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<int> picks) : picks_(std::move(picks)) {}

  const std::vector<int>& picks() const { return picks_; }
  int size() const { return static_cast<int>(picks_.size()); }
  int operator[](int t) const { return picks_[t]; }

  friend auto operator<=>(const Sequence&, const Sequence&) = default;

 private:
  std::vector<int> picks_;
};

// Throws unless the sequence has length m and only valid agents.
void check_sequence(const Instance& instance, const Sequence& sequence);

// Every allocation reachable by resolving each tie between top objects in
// every possible way. Duplicates merged.
std::set<Allocation> execute_all(const Instance& instance,
                                 const Sequence& sequence);

// Greedy peeling failed: `witness` is the allocation restricted to the
// objects left at the failing step, and it is frustrating.
struct NonSequenceable {
  Allocation witness;
};

using SequenceabilityVerdict = std::variant<Sequence, NonSequenceable>;

// Ties are broken towards the lowest agent, then the lowest object.
SequenceabilityVerdict sequence_of(const Instance& instance,
                                   const Allocation& allocation);

bool is_sequenceable(const Instance& instance, const Allocation& allocation);

// s(I), ordered by sequence (lexicographic) then allocation.
std::vector<std::pair<Sequence, Allocation>> relation(
    const Instance& instance,
    std::uint64_t budget = kDefaultEnumerationBudget);

// "2,1,2" (1-based)
Sequence parse_sequence(std::string_view text, int agents, int objects);
std::string format_sequence(const Sequence& sequence);

}  // namespace fairdiv

#endif  // FAIRDIV_SEQUENCES_HPP
