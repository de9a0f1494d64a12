#ifndef FAIRDIV_DEALS_HPP
#define FAIRDIV_DEALS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

struct Transfer {
  int agent;
  ObjectSet objects;

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

// transfers[j].agent gives transfers[j].objects to transfers[j+1].agent; the
// last one gives to the first. At least two distinct agents, every transfer
// nonempty.
class CycleDeal {
 public:
  explicit CycleDeal(std::vector<Transfer> transfers);

  const std::vector<Transfer>& transfers() const { return transfers_; }
  int length() const { return static_cast<int>(transfers_.size()); }
  // Largest transfer, i.e. the smallest M for which this is an (N, M) deal.
  int max_transfer_size() const;

  friend bool operator==(const CycleDeal&, const CycleDeal&) = default;

 private:
  std::vector<Transfer> transfers_;
};

// Ordered: a strict deal is also weakly improving.
enum class DealStrength { kNotImproving, kWeak, kStrict };

// Throws DomainError unless each transfer comes out of its giver's bundle.
void check_applicable(const Allocation& allocation, const CycleDeal& deal);

Allocation apply_deal(const Allocation& allocation, const CycleDeal& deal);

DealStrength classify_deal(const Instance& instance,
                           const Allocation& allocation,
                           const CycleDeal& deal);

// Exhaustive search for a deal at least as strong as `strength` among
// cycles of 2..max_agents agents and transfers of 1..max_transfer objects.
// Cycles are tried by length, then agent tuple (each cycle once, starting at
// its lowest agent), then transfers (smaller sets first).
std::optional<CycleDeal> find_improving_cycle(const Instance& instance,
                                              const Allocation& allocation,
                                              int max_agents, int max_transfer,
                                              DealStrength strength);

bool is_cycle_optimal(const Instance& instance, const Allocation& allocation,
                      int max_agents, int max_transfer,
                      DealStrength strength);

// Strict (N=2, M=1) cycle optimality.
inline bool is_swap_optimal(const Instance& instance,
                            const Allocation& allocation) {
  return is_cycle_optimal(instance, allocation, 2, 1, DealStrength::kStrict);
}

// For a non-sequenceable allocation, follows top-object -> owner links inside
// the frustrating remainder left by greedy sequencing until an agent repeats,
// and returns the resulting strictly improving cycle of single objects.
// Empty iff the allocation is sequenceable.
std::optional<CycleDeal> improving_cycle_from_frustration(
    const Instance& instance, const Allocation& allocation);

// "2 -{3}-> 1 -{4}-> 2" (1-based)
std::string format_deal(const CycleDeal& deal);
std::string_view to_string(DealStrength strength);

}  // namespace fairdiv

#endif  // FAIRDIV_DEALS_HPP
