#include "fairdiv/sequences.hpp"

#include <charconv>

namespace fairdiv {

void check_sequence(const Instance& instance, const Sequence& sequence) {
  if (sequence.size() != instance.objects()) {
    throw DomainError("sequence length " + std::to_string(sequence.size()) +
                      " differs from the object count " +
                      std::to_string(instance.objects()));
  }
  for (const int agent : sequence.picks()) instance.check_agent(agent);
}

namespace {

void explore(const Instance& instance, const Sequence& sequence, int step,
             ObjectSet remaining, std::vector<ObjectSet>& bundles,
             std::set<Allocation>& out) {
  if (step == sequence.size()) {
    out.emplace(instance.objects(), bundles);
    return;
  }
  const int agent = sequence[step];
  for (const int k : best_objects(instance, agent, remaining)) {
    bundles[agent].insert(k);
    explore(instance, sequence, step + 1, remaining.without(k), bundles, out);
    bundles[agent].erase(k);
  }
}

}  // namespace

std::set<Allocation> execute_all(const Instance& instance,
                                 const Sequence& sequence) {
  check_sequence(instance, sequence);
  std::set<Allocation> out;
  std::vector<ObjectSet> bundles(static_cast<std::size_t>(instance.agents()));
  explore(instance, sequence, 0, instance.all_objects(), bundles, out);
  return out;
}

SequenceabilityVerdict sequence_of(const Instance& instance,
                                   const Allocation& allocation) {
  check_full(instance, allocation);
  std::vector<int> picks;
  picks.reserve(static_cast<std::size_t>(instance.objects()));
  ObjectSet remaining = instance.all_objects();
  while (!remaining.empty()) {
    bool picked = false;
    for (int i = 0; i < instance.agents() && !picked; ++i) {
      const ObjectSet hit =
          best_objects(instance, i, remaining) & allocation.bundle(i);
      if (!hit.empty()) {
        picks.push_back(i);
        remaining.erase(hit.front());
        picked = true;
      }
    }
    if (!picked) return NonSequenceable{allocation.restricted_to(remaining)};
  }
  return Sequence(std::move(picks));
}

bool is_sequenceable(const Instance& instance, const Allocation& allocation) {
  return std::holds_alternative<Sequence>(sequence_of(instance, allocation));
}

std::vector<std::pair<Sequence, Allocation>> relation(const Instance& instance,
                                                      std::uint64_t budget) {
  const int n = instance.agents();
  const int m = instance.objects();
  const std::uint64_t total = count_allocations(n, m, budget);
  std::vector<std::pair<Sequence, Allocation>> out;
  std::vector<int> picks(static_cast<std::size_t>(m), 0);
  for (std::uint64_t s = 0; s < total; ++s) {
    Sequence sequence(picks);
    for (auto& a : execute_all(instance, sequence)) {
      out.emplace_back(sequence, a);
    }
    for (int t = m - 1; t >= 0; --t) {
      if (++picks[t] < n) break;
      picks[t] = 0;
    }
  }
  return out;
}

Sequence parse_sequence(std::string_view text, int agents, int objects) {
  std::vector<int> picks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto stop = text.find(',', pos);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view token = text.substr(pos, stop - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int agent = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), agent);
    if (ec != std::errc() || ptr != token.data() + token.size() ||
        agent < 1 || agent > agents) {
      throw ParseError("invalid agent '" + std::string(token) +
                       "' in sequence");
    }
    picks.push_back(agent - 1);
    pos = stop + 1;
  }
  if (static_cast<int>(picks.size()) != objects) {
    throw ParseError("sequence '" + std::string(text) + "' has " +
                     std::to_string(picks.size()) + " picks, expected " +
                     std::to_string(objects));
  }
  return Sequence(std::move(picks));
}

std::string format_sequence(const Sequence& sequence) {
  std::string out;
  for (const int agent : sequence.picks()) {
    if (!out.empty()) out += ',';
    out += std::to_string(agent + 1);
  }
  return out;
}

}  // namespace fairdiv
