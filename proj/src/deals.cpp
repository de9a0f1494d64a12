#include "fairdiv/deals.hpp"

#include <algorithm>
#include <variant>

#include "fairdiv/sequences.hpp"

namespace fairdiv {

CycleDeal::CycleDeal(std::vector<Transfer> transfers)
    : transfers_(std::move(transfers)) {
  if (transfers_.size() < 2) {
    throw DomainError("a cycle deal needs at least two agents");
  }
  for (std::size_t j = 0; j < transfers_.size(); ++j) {
    if (transfers_[j].objects.empty()) {
      throw DomainError("cycle deal with an empty transfer");
    }
    for (std::size_t l = 0; l < j; ++l) {
      if (transfers_[l].agent == transfers_[j].agent) {
        throw DomainError("cycle deal repeats agent " +
                          std::to_string(transfers_[j].agent + 1));
      }
    }
  }
}

int CycleDeal::max_transfer_size() const {
  int size = 0;
  for (const auto& t : transfers_) size = std::max(size, t.objects.size());
  return size;
}

void check_applicable(const Allocation& allocation, const CycleDeal& deal) {
  for (const auto& t : deal.transfers()) {
    if (t.agent < 0 || t.agent >= allocation.agents()) {
      throw DomainError("deal mentions agent " + std::to_string(t.agent + 1) +
                        " outside the allocation");
    }
    if (!t.objects.is_subset_of(allocation.bundle(t.agent))) {
      throw DomainError("agent " + std::to_string(t.agent + 1) +
                        " does not own {" + format_object_set(t.objects) +
                        "}");
    }
  }
}

Allocation apply_deal(const Allocation& allocation, const CycleDeal& deal) {
  check_applicable(allocation, deal);
  std::vector<ObjectSet> bundles = allocation.bundles();
  const auto& ts = deal.transfers();
  const std::size_t count = ts.size();
  for (std::size_t j = 0; j < count; ++j) {
    const auto& received = ts[(j + count - 1) % count].objects;
    bundles[ts[j].agent] = (bundles[ts[j].agent] - ts[j].objects) | received;
  }
  return Allocation(allocation.objects(), std::move(bundles));
}

DealStrength classify_deal(const Instance& instance,
                           const Allocation& allocation,
                           const CycleDeal& deal) {
  check_shape(instance, allocation);
  check_applicable(allocation, deal);
  const auto& ts = deal.transfers();
  const std::size_t count = ts.size();
  bool all_strict = true;
  bool any_strict = false;
  for (std::size_t j = 0; j < count; ++j) {
    const int agent = ts[j].agent;
    const Rational gain =
        utility(instance, agent, ts[(j + count - 1) % count].objects) -
        utility(instance, agent, ts[j].objects);
    if (gain < 0) return DealStrength::kNotImproving;
    if (gain > 0) {
      any_strict = true;
    } else {
      all_strict = false;
    }
  }
  if (all_strict) return DealStrength::kStrict;
  return any_strict ? DealStrength::kWeak : DealStrength::kNotImproving;
}

namespace {

struct Candidate {
  ObjectSet objects;
  Rational giver_value;  // utility lost by the giver
};

class CycleSearch {
 public:
  CycleSearch(const Instance& instance, const Allocation& allocation,
              int max_transfer, DealStrength strength)
      : instance_(instance), strength_(strength) {
    candidates_.resize(static_cast<std::size_t>(instance.agents()));
    for (int i = 0; i < instance.agents(); ++i) {
      const ObjectSet bundle = allocation.bundle(i);
      const auto members = bundle.to_vector();
      std::vector<ObjectSet> subsets;
      // Subsets of the bundle by increasing size, then by mask.
      const std::uint64_t limit = std::uint64_t{1} << members.size();
      for (int size = 1; size <= std::min<int>(max_transfer,
                                               static_cast<int>(members.size()));
           ++size) {
        std::vector<ObjectSet> level;
        for (std::uint64_t pick = 0; pick < limit; ++pick) {
          if (std::popcount(pick) != size) continue;
          ObjectSet s;
          for (std::size_t b = 0; b < members.size(); ++b) {
            if ((pick >> b) & 1U) s.insert(members[b]);
          }
          level.push_back(s);
        }
        std::sort(level.begin(), level.end());
        subsets.insert(subsets.end(), level.begin(), level.end());
      }
      for (const ObjectSet s : subsets) {
        candidates_[i].push_back({s, utility(instance, i, s)});
      }
    }
  }

  std::optional<CycleDeal> search(const std::vector<int>& agents) {
    agents_ = agents;
    chosen_.assign(agents.size(), nullptr);
    if (descend(0, false)) {
      std::vector<Transfer> ts;
      for (std::size_t j = 0; j < agents_.size(); ++j) {
        ts.push_back({agents_[j], chosen_[j]->objects});
      }
      return CycleDeal(std::move(ts));
    }
    return std::nullopt;
  }

 private:
  // Returns true if the gain is acceptable; records strictness.
  bool acceptable(const Rational& gain, bool& strict) const {
    if (gain > 0) {
      strict = true;
      return true;
    }
    return strength_ == DealStrength::kWeak && gain == 0;
  }

  bool descend(std::size_t j, bool any_strict) {
    const std::size_t count = agents_.size();
    const int agent = agents_[j];
    for (const auto& c : candidates_[agent]) {
      chosen_[j] = &c;
      bool strict = any_strict;
      if (j > 0) {
        // agents_[j] receives chosen_[j-1] and gives c.
        const Rational gain =
            utility(instance_, agent, chosen_[j - 1]->objects) -
            c.giver_value;
        if (!acceptable(gain, strict)) continue;
      }
      if (j + 1 == count) {
        const int first = agents_[0];
        const Rational gain =
            utility(instance_, first, c.objects) - chosen_[0]->giver_value;
        if (!acceptable(gain, strict)) continue;
        if (strict) return true;
        continue;
      }
      if (descend(j + 1, strict)) return true;
    }
    return false;
  }

  const Instance& instance_;
  DealStrength strength_;
  std::vector<std::vector<Candidate>> candidates_;
  std::vector<int> agents_;
  std::vector<const Candidate*> chosen_;
};

// Ordered tuples of `length` distinct agents whose first element is the
// smallest, in lexicographic order. Each cycle appears once.
void cycle_tuples(int agents, std::vector<int>& prefix, int length,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == length) {
    out.push_back(prefix);
    return;
  }
  const int low = prefix.empty() ? 0 : prefix.front() + 1;
  for (int a = low; a < agents; ++a) {
    if (std::find(prefix.begin(), prefix.end(), a) != prefix.end()) continue;
    prefix.push_back(a);
    cycle_tuples(agents, prefix, length, out);
    prefix.pop_back();
  }
}

}  // namespace

std::optional<CycleDeal> find_improving_cycle(const Instance& instance,
                                              const Allocation& allocation,
                                              int max_agents, int max_transfer,
                                              DealStrength strength) {
  check_full(instance, allocation);
  if (max_agents > instance.agents()) {
    throw DomainError("cycle length cap exceeds the agent count");
  }
  if (max_transfer < 1) throw DomainError("transfer cap must be >= 1");
  if (strength == DealStrength::kNotImproving) {
    throw DomainError("search strength must be weak or strict");
  }
  CycleSearch search(instance, allocation, max_transfer, strength);
  for (int length = 2; length <= max_agents; ++length) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> prefix;
    cycle_tuples(instance.agents(), prefix, length, tuples);
    for (const auto& tuple : tuples) {
      if (auto deal = search.search(tuple)) return deal;
    }
  }
  return std::nullopt;
}

bool is_cycle_optimal(const Instance& instance, const Allocation& allocation,
                      int max_agents, int max_transfer,
                      DealStrength strength) {
  return !find_improving_cycle(instance, allocation, max_agents, max_transfer,
                               strength);
}

std::optional<CycleDeal> improving_cycle_from_frustration(
    const Instance& instance, const Allocation& allocation) {
  const auto verdict = sequence_of(instance, allocation);
  const auto* failure = std::get_if<NonSequenceable>(&verdict);
  if (failure == nullptr) return std::nullopt;
  const Allocation& rest = failure->witness;
  const ObjectSet scope = rest.scope();

  int start = 0;
  while (rest.bundle(start).empty()) ++start;

  // path[j] wants wanted[j], which is held by path[j+1].
  std::vector<int> path{start};
  std::vector<int> wanted;
  std::vector<int> position(static_cast<std::size_t>(instance.agents()), -1);
  position[start] = 0;
  while (true) {
    const int agent = path.back();
    const int object = best_objects(instance, agent, scope).front();
    const int holder = *rest.owner(object);
    wanted.push_back(object);
    if (position[holder] >= 0) {
      const int from = position[holder];
      const std::vector<int> cycle(path.begin() + from, path.end());
      const std::vector<int> wants(wanted.begin() + from, wanted.end());
      const int length = static_cast<int>(cycle.size());
      // cycle[g] holds wants[g-1]; it hands it to cycle[g-1], which gives
      // next. Start with the holder of the first wanted object.
      std::vector<Transfer> ts;
      for (int t = 0; t < length; ++t) {
        const int g = ((1 - t) % length + length) % length;
        ts.push_back({cycle[g], ObjectSet{wants[(g - 1 + length) % length]}});
      }
      return CycleDeal(std::move(ts));
    }
    position[holder] = static_cast<int>(path.size());
    path.push_back(holder);
  }
}

std::string format_deal(const CycleDeal& deal) {
  std::string out;
  for (const auto& t : deal.transfers()) {
    out += std::to_string(t.agent + 1) + " -{" +
           format_object_set(t.objects) + "}-> ";
  }
  out += std::to_string(deal.transfers().front().agent + 1);
  return out;
}

std::string_view to_string(DealStrength strength) {
  switch (strength) {
    case DealStrength::kStrict:
      return "strict";
    case DealStrength::kWeak:
      return "weak";
    case DealStrength::kNotImproving:
      break;
  }
  return "not-improving";
}

}  // namespace fairdiv
