#include "fairdiv/core.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>
#include <sstream>

namespace fairdiv {

// ObjectSet ------------------------------------------------------------------

ObjectSet::ObjectSet(std::initializer_list<int> objects) {
  for (const int k : objects) insert(k);
}

ObjectSet ObjectSet::first(int m) {
  if (m < 0 || m > kMaxObjects) {
    throw CapacityError("object count " + std::to_string(m) +
                        " outside [0, 64]");
  }
  return ObjectSet(m == kMaxObjects ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << m) - 1);
}

void ObjectSet::insert(int object) {
  if (object < 0 || object >= kMaxObjects) {
    throw IndexError("object index " + std::to_string(object) +
                     " out of range");
  }
  bits_ |= std::uint64_t{1} << object;
}

void ObjectSet::erase(int object) {
  if (object >= 0 && object < kMaxObjects) {
    bits_ &= ~(std::uint64_t{1} << object);
  }
}

ObjectSet ObjectSet::with(int object) const {
  ObjectSet s = *this;
  s.insert(object);
  return s;
}

ObjectSet ObjectSet::without(int object) const {
  ObjectSet s = *this;
  s.erase(object);
  return s;
}

std::vector<int> ObjectSet::to_vector() const { return {begin(), end()}; }

// Instance -------------------------------------------------------------------

Instance::Instance(std::vector<std::vector<Rational>> weights,
                   std::optional<std::vector<int>> axis)
    : agents_(static_cast<int>(weights.size())),
      objects_(weights.empty() ? 0 : static_cast<int>(weights[0].size())),
      axis_(std::move(axis)) {
  if (agents_ < 1) throw DomainError("an instance needs at least one agent");
  if (objects_ < 1) throw DomainError("an instance needs at least one object");
  if (objects_ > kMaxObjects) {
    throw CapacityError("at most 64 objects are supported, got " +
                        std::to_string(objects_));
  }
  weights_.reserve(static_cast<std::size_t>(agents_) * objects_);
  for (int i = 0; i < agents_; ++i) {
    auto& row = weights[i];
    if (static_cast<int>(row.size()) != objects_) {
      throw DomainError("weight matrix is not rectangular (row " +
                        std::to_string(i + 1) + ")");
    }
    for (auto& w : row) {
      w.canonicalize();
      if (w < 0) {
        throw DomainError("negative weight " + to_string(w) + " for agent " +
                          std::to_string(i + 1));
      }
      weights_.push_back(std::move(w));
    }
  }
  if (axis_) {
    std::vector<int> sorted = *axis_;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < objects_; ++k) {
      if (static_cast<int>(sorted.size()) != objects_ || sorted[k] != k) {
        throw DomainError("axis is not a permutation of the objects");
      }
    }
  }
}

Instance Instance::from_integers(const std::vector<std::vector<long>>& weights,
                                 std::optional<std::vector<int>> axis) {
  std::vector<std::vector<Rational>> rows;
  rows.reserve(weights.size());
  for (const auto& r : weights) {
    std::vector<Rational> row;
    row.reserve(r.size());
    for (const long w : r) row.emplace_back(w);
    rows.push_back(std::move(row));
  }
  return Instance(std::move(rows), std::move(axis));
}

void Instance::check_agent(int agent) const {
  if (agent < 0 || agent >= agents_) {
    throw IndexError("agent " + std::to_string(agent + 1) +
                     " outside 1.." + std::to_string(agents_));
  }
}

void Instance::check_object(int object) const {
  if (object < 0 || object >= objects_) {
    throw IndexError("object " + std::to_string(object + 1) +
                     " outside 1.." + std::to_string(objects_));
  }
}

const Rational& Instance::weight(int agent, int object) const {
  check_agent(agent);
  check_object(object);
  return weights_[static_cast<std::size_t>(agent) * objects_ + object];
}

// Allocation -----------------------------------------------------------------

Allocation::Allocation(int objects, std::vector<ObjectSet> bundles)
    : objects_(objects), bundles_(std::move(bundles)) {
  if (bundles_.empty()) throw DomainError("an allocation needs an agent");
  const ObjectSet universe = ObjectSet::first(objects_);
  for (const ObjectSet b : bundles_) {
    if (!b.is_subset_of(universe)) {
      throw IndexError("bundle mentions an object outside 1.." +
                       std::to_string(objects_));
    }
    if (b.intersects(scope_)) {
      throw DomainError("bundles are not pairwise disjoint");
    }
    scope_ = scope_ | b;
  }
}

Allocation Allocation::from_owners(int agents, std::span<const int> owner) {
  std::vector<ObjectSet> bundles(static_cast<std::size_t>(agents));
  for (std::size_t k = 0; k < owner.size(); ++k) {
    if (owner[k] < 0 || owner[k] >= agents) {
      throw IndexError("owner index out of range");
    }
    bundles[owner[k]].insert(static_cast<int>(k));
  }
  return Allocation(static_cast<int>(owner.size()), std::move(bundles));
}

std::optional<int> Allocation::owner(int object) const {
  for (int i = 0; i < agents(); ++i) {
    if (bundles_[i].contains(object)) return i;
  }
  return std::nullopt;
}

Allocation Allocation::restricted_to(ObjectSet objects) const {
  std::vector<ObjectSet> bundles;
  bundles.reserve(bundles_.size());
  for (const ObjectSet b : bundles_) bundles.push_back(b & objects);
  return Allocation(objects_, std::move(bundles));
}

void check_shape(const Instance& instance, const Allocation& allocation) {
  if (allocation.agents() != instance.agents() ||
      allocation.objects() != instance.objects()) {
    throw DomainError("allocation shape (" +
                      std::to_string(allocation.agents()) + " agents, " +
                      std::to_string(allocation.objects()) +
                      " objects) does not match the instance");
  }
}

void check_full(const Instance& instance, const Allocation& allocation) {
  check_shape(instance, allocation);
  if (!allocation.is_full()) {
    throw DomainError("allocation does not cover every object");
  }
}

// Predicates -----------------------------------------------------------------

Rational utility(const Instance& instance, int agent, ObjectSet bundle) {
  instance.check_agent(agent);
  if (!bundle.is_subset_of(instance.all_objects())) {
    throw IndexError("bundle mentions an object outside 1.." +
                     std::to_string(instance.objects()));
  }
  const auto row = instance.row(agent);
  Rational total = 0;
  for (const int k : bundle) total += row[k];
  return total;
}

ObjectSet best_objects(const Instance& instance, int agent,
                       ObjectSet objects) {
  instance.check_agent(agent);
  if (objects.empty()) {
    throw DomainError("best objects of an empty set are undefined");
  }
  if (!objects.is_subset_of(instance.all_objects())) {
    throw IndexError("object set exceeds the instance");
  }
  const auto row = instance.row(agent);
  ObjectSet best;
  const Rational* top = nullptr;
  for (const int k : objects) {
    if (top == nullptr || row[k] > *top) {
      top = &row[k];
      best = ObjectSet{k};
    } else if (row[k] == *top) {
      best.insert(k);
    }
  }
  return best;
}

bool is_frustrating(const Instance& instance, const Allocation& allocation) {
  check_shape(instance, allocation);
  const ObjectSet scope = allocation.scope();
  if (scope.empty()) {
    throw DomainError("frustration is undefined on an empty scope");
  }
  for (int i = 0; i < instance.agents(); ++i) {
    if (best_objects(instance, i, scope).intersects(allocation.bundle(i))) {
      return false;
    }
  }
  return true;
}

bool is_strict_on_objects(const Instance& instance) {
  for (int i = 0; i < instance.agents(); ++i) {
    std::vector<Rational> row(instance.row(i).begin(), instance.row(i).end());
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) return false;
  }
  return true;
}

bool is_strict_on_shares(const Instance& instance) {
  const BundleUtilities table(instance);
  const std::uint64_t bundles = std::uint64_t{1} << instance.objects();
  std::vector<Rational> sums(bundles);
  for (int i = 0; i < instance.agents(); ++i) {
    for (std::uint64_t b = 0; b < bundles; ++b) sums[b] = table(i, ObjectSet(b));
    std::sort(sums.begin(), sums.end());
    if (std::adjacent_find(sums.begin(), sums.end()) != sums.end()) {
      return false;
    }
  }
  return true;
}

bool is_same_order(const Instance& instance) {
  // Edge k -> l when some agent strictly prefers k to l; a common order
  // exists iff this relation is acyclic.
  const int m = instance.objects();
  std::vector<std::vector<int>> succ(m);
  std::vector<int> indegree(m, 0);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == l) continue;
      for (int i = 0; i < instance.agents(); ++i) {
        const auto row = instance.row(i);
        if (row[k] > row[l]) {
          succ[k].push_back(l);
          ++indegree[l];
          break;
        }
      }
    }
  }
  std::vector<int> ready;
  for (int k = 0; k < m; ++k) {
    if (indegree[k] == 0) ready.push_back(k);
  }
  int sorted = 0;
  while (!ready.empty()) {
    const int k = ready.back();
    ready.pop_back();
    ++sorted;
    for (const int l : succ[k]) {
      if (--indegree[l] == 0) ready.push_back(l);
    }
  }
  return sorted == m;
}

bool is_single_peaked(const Instance& instance, std::span<const int> axis) {
  const int m = instance.objects();
  std::vector<bool> seen(m, false);
  if (static_cast<int>(axis.size()) != m) {
    throw DomainError("axis length differs from the object count");
  }
  for (const int k : axis) {
    if (k < 0 || k >= m || seen[k]) {
      throw DomainError("axis is not a permutation of the objects");
    }
    seen[k] = true;
  }
  for (int i = 0; i < instance.agents(); ++i) {
    const auto row = instance.row(i);
    int t = 0;
    while (t + 1 < m && row[axis[t]] < row[axis[t + 1]]) ++t;
    // t is the peak; everything after it must strictly decrease.
    for (; t + 1 < m; ++t) {
      if (!(row[axis[t]] > row[axis[t + 1]])) return false;
    }
  }
  return true;
}

Instance normalize(const Instance& instance) {
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < instance.agents(); ++i) {
    const auto row = instance.row(i);
    Rational total = 0;
    for (const auto& w : row) total += w;
    if (total == 0) {
      throw DomainError("agent " + std::to_string(i + 1) +
                        " has only zero weights");
    }
    std::vector<Rational> scaled;
    scaled.reserve(row.size());
    for (const auto& w : row) scaled.emplace_back(w / total);
    rows.push_back(std::move(scaled));
  }
  return Instance(std::move(rows), instance.axis());
}

// Enumeration ----------------------------------------------------------------

std::uint64_t count_allocations(int agents, int objects,
                                std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int k = 0; k < objects; ++k) {
    if (total > budget / static_cast<std::uint64_t>(agents)) {
      throw CapacityError(std::to_string(agents) + "^" +
                          std::to_string(objects) +
                          " allocations exceed the enumeration budget of " +
                          std::to_string(budget));
    }
    total *= static_cast<std::uint64_t>(agents);
  }
  if (total > budget) {
    throw CapacityError("allocation count exceeds the enumeration budget");
  }
  return total;
}

Allocation allocation_at(int agents, int objects, std::uint64_t index) {
  std::vector<int> owner(static_cast<std::size_t>(objects));
  for (int k = objects - 1; k >= 0; --k) {
    owner[k] = static_cast<int>(index % static_cast<std::uint64_t>(agents));
    index /= static_cast<std::uint64_t>(agents);
  }
  return Allocation::from_owners(agents, owner);
}

AllocationStream::AllocationStream(const Instance& instance,
                                   std::uint64_t budget, std::uint64_t start)
    : agents_(instance.agents()),
      objects_(instance.objects()),
      total_(count_allocations(agents_, objects_, budget)),
      index_(start) {
  std::uint64_t rest = start;
  owner_.assign(static_cast<std::size_t>(objects_), 0);
  for (int k = objects_ - 1; k >= 0; --k) {
    owner_[k] = static_cast<int>(rest % static_cast<std::uint64_t>(agents_));
    rest /= static_cast<std::uint64_t>(agents_);
  }
}

std::optional<Allocation> AllocationStream::next() {
  if (index_ >= total_) return std::nullopt;
  Allocation current = Allocation::from_owners(agents_, owner_);
  ++index_;
  for (int k = objects_ - 1; k >= 0; --k) {
    if (++owner_[k] < agents_) break;
    owner_[k] = 0;
  }
  return current;
}

std::vector<Allocation> enumerate_allocations(const Instance& instance,
                                              std::uint64_t budget) {
  AllocationStream stream(instance, budget);
  std::vector<Allocation> all;
  all.reserve(stream.size());
  while (auto a = stream.next()) all.push_back(std::move(*a));
  return all;
}

BundleUtilities::BundleUtilities(const Instance& instance)
    : agents_(instance.agents()), objects_(instance.objects()) {
  if (objects_ > kMaxTabulatedObjects) {
    throw CapacityError("bundle tables need at most " +
                        std::to_string(kMaxTabulatedObjects) + " objects");
  }
  stride_ = std::size_t{1} << objects_;
  table_.resize(stride_ * agents_);
  for (int i = 0; i < agents_; ++i) {
    const auto row = instance.row(i);
    Rational* u = table_.data() + stride_ * i;
    for (std::size_t b = 1; b < stride_; ++b) {
      u[b] = u[b & (b - 1)] + row[std::countr_zero(b)];
    }
  }
}

// Generation -----------------------------------------------------------------

void validate(const GeneratorConfig& config) {
  if (config.agents < 1) throw DomainError("agent count must be >= 1");
  if (config.objects < 1 || config.objects > kMaxObjects) {
    throw DomainError("object count must be in 1..64");
  }
  if (config.weight_cap < 1) throw DomainError("weight cap must be >= 1");
  if (config.count < 1) throw DomainError("instance count must be >= 1");
  if (config.model == GeneratorModel::kSinglePeaked &&
      config.weight_cap + 1 < config.objects) {
    throw DomainError(
        "single-peaked generation needs weight_cap + 1 >= object count");
  }
}

namespace {

std::mt19937_64 instance_rng(const GeneratorConfig& config, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                    static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(config.model)};
  return std::mt19937_64(seq);
}

std::vector<long> single_peaked_row(std::mt19937_64& rng, int m, long cap) {
  std::uniform_int_distribution<long> draw(0, cap);
  std::vector<long> values;
  while (static_cast<int>(values.size()) < m) {
    const long w = draw(rng);
    if (std::find(values.begin(), values.end(), w) == values.end()) {
      values.push_back(w);
    }
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<long> row(static_cast<std::size_t>(m));
  int left = std::uniform_int_distribution<int>(0, m - 1)(rng);
  int right = left;
  row[left] = values[0];
  std::bernoulli_distribution coin(0.5);
  for (int t = 1; t < m; ++t) {
    const bool can_left = left > 0;
    const bool can_right = right < m - 1;
    const bool go_left = can_left && (!can_right || coin(rng));
    row[go_left ? --left : ++right] = values[t];
  }
  return row;
}

}  // namespace

Instance generate_instance(const GeneratorConfig& config, int index) {
  validate(config);
  auto rng = instance_rng(config, index);
  std::vector<std::vector<long>> rows;
  if (config.model == GeneratorModel::kUniform) {
    std::uniform_int_distribution<long> draw(0, config.weight_cap);
    for (int i = 0; i < config.agents; ++i) {
      std::vector<long> row(static_cast<std::size_t>(config.objects));
      for (auto& w : row) w = draw(rng);
      rows.push_back(std::move(row));
    }
    return Instance::from_integers(rows);
  }
  for (int i = 0; i < config.agents; ++i) {
    rows.push_back(single_peaked_row(rng, config.objects, config.weight_cap));
  }
  std::vector<int> axis(static_cast<std::size_t>(config.objects));
  for (int k = 0; k < config.objects; ++k) axis[k] = k;
  return Instance::from_integers(rows, std::move(axis));
}

std::vector<Instance> generate(const GeneratorConfig& config) {
  validate(config);
  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(config.count));
  for (int index = 0; index < config.count; ++index) {
    out.push_back(generate_instance(config, index));
  }
  return out;
}

std::string_view to_string(GeneratorModel model) {
  return model == GeneratorModel::kUniform ? "uniform" : "single-peaked";
}

GeneratorModel parse_model(std::string_view text) {
  if (text == "uniform") return GeneratorModel::kUniform;
  if (text == "single-peaked") return GeneratorModel::kSinglePeaked;
  throw ParseError("unknown model '" + std::string(text) +
                   "' (expected uniform or single-peaked)");
}

// Text formats ---------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto stop = s.find_first_of(" \t\r", start);
    if (stop == std::string_view::npos) stop = s.size();
    out.push_back(s.substr(start, stop - start));
    pos = stop;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto stop = s.find(sep, pos);
    out.push_back(s.substr(pos, stop - pos));
    if (stop == std::string_view::npos) break;
    pos = stop + 1;
  }
  return out;
}

int parse_positive_int(std::string_view token, std::string_view what) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || value < 1) {
    throw ParseError("invalid " + std::string(what) + " '" +
                     std::string(token) + "'");
  }
  return value;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> lines;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) lines.emplace_back(line_no, line);
  }
  if (lines.empty()) throw ParseError("empty instance file");

  const auto header = split_ws(lines[0].second);
  if (header.size() != 2) {
    throw ParseError("line " + std::to_string(lines[0].first) +
                     ": expected 'n m', got '" +
                     std::string(lines[0].second) + "'");
  }
  const int n = parse_positive_int(header[0], "agent count");
  const int m = parse_positive_int(header[1], "object count");
  if (static_cast<int>(lines.size()) < n + 1) {
    throw ParseError("expected " + std::to_string(n) +
                     " weight rows, found " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < n; ++i) {
    const auto& [no, line] = lines[i + 1];
    const auto tokens = split_ws(line);
    if (static_cast<int>(tokens.size()) != m) {
      throw ParseError("line " + std::to_string(no) + ": expected " +
                       std::to_string(m) + " weights, got " +
                       std::to_string(tokens.size()));
    }
    std::vector<Rational> row;
    for (const auto token : tokens) {
      try {
        row.push_back(parse_rational(token));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(no) + ": " + e.what());
      }
      if (row.back() < 0) {
        throw ParseError("line " + std::to_string(no) + ": negative weight '" +
                         std::string(token) + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  std::optional<std::vector<int>> axis;
  for (std::size_t l = n + 1; l < lines.size(); ++l) {
    const auto& [no, line] = lines[l];
    if (axis || !line.starts_with("axis:")) {
      throw ParseError("line " + std::to_string(no) + ": unexpected '" +
                       std::string(line) + "'");
    }
    std::vector<int> order;
    for (const auto token : split_ws(line.substr(5))) {
      const int k = parse_positive_int(token, "axis object");
      if (k > m) {
        throw ParseError("line " + std::to_string(no) + ": axis object '" +
                         std::string(token) + "' exceeds " +
                         std::to_string(m));
      }
      order.push_back(k - 1);
    }
    axis = std::move(order);
  }
  try {
    return Instance(std::move(rows), std::move(axis));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string format_instance(const Instance& instance) {
  std::ostringstream out;
  out << instance.agents() << ' ' << instance.objects() << '\n';
  for (int i = 0; i < instance.agents(); ++i) {
    const auto row = instance.row(i);
    for (int k = 0; k < instance.objects(); ++k) {
      out << (k ? " " : "") << to_string(row[k]);
    }
    out << '\n';
  }
  if (const auto& axis = instance.axis()) {
    out << "axis:";
    for (const int k : *axis) out << ' ' << k + 1;
    out << '\n';
  }
  return out.str();
}

Allocation parse_allocation(std::string_view text, int agents, int objects) {
  const auto fields = split(trim(text), '|');
  if (static_cast<int>(fields.size()) != agents) {
    throw ParseError("allocation '" + std::string(text) + "' has " +
                     std::to_string(fields.size()) + " bundles, expected " +
                     std::to_string(agents));
  }
  std::vector<ObjectSet> bundles;
  ObjectSet seen;
  for (const auto raw : fields) {
    const auto field = trim(raw);
    ObjectSet bundle;
    if (!field.empty() && field != "-") {
      for (const auto item : split(field, ',')) {
        const auto token = trim(item);
        const int k = parse_positive_int(token, "object");
        if (k > objects) {
          throw ParseError("object '" + std::string(token) + "' exceeds " +
                           std::to_string(objects));
        }
        if (seen.contains(k - 1)) {
          throw ParseError("object '" + std::string(token) +
                           "' appears in two bundles");
        }
        seen.insert(k - 1);
        bundle.insert(k - 1);
      }
    }
    bundles.push_back(bundle);
  }
  return Allocation(objects, std::move(bundles));
}

std::string format_object_set(ObjectSet objects) {
  if (objects.empty()) return "-";
  std::string out;
  for (const int k : objects) {
    if (!out.empty()) out += ',';
    out += std::to_string(k + 1);
  }
  return out;
}

std::string format_allocation(const Allocation& allocation) {
  std::string out;
  for (int i = 0; i < allocation.agents(); ++i) {
    if (i) out += '|';
    out += format_object_set(allocation.bundle(i));
  }
  return out;
}

}  // namespace fairdiv
