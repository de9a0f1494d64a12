#ifndef FAIRDIV_CORE_HPP
#define FAIRDIV_CORE_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// Agents and objects are 0-based everywhere in the library. Text forms
// (files, CLI) are 1-based; the conversion happens only in the parsers and
// formatters.

inline constexpr int kMaxObjects = 64;
// Operations that tabulate all 2^m bundles refuse larger instances.
inline constexpr int kMaxTabulatedObjects = 20;
inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// A set of objects, stored as a bit mask.
class ObjectSet {
 public:
  class Iterator {
   public:
    using value_type = int;
    using difference_type = std::ptrdiff_t;

    Iterator() = default;
    explicit Iterator(std::uint64_t rest) : rest_(rest) {}
    int operator*() const { return std::countr_zero(rest_); }
    Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    Iterator operator++(int) {
      Iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const Iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr ObjectSet() = default;
  constexpr explicit ObjectSet(std::uint64_t bits) : bits_(bits) {}
  ObjectSet(std::initializer_list<int> objects);

  // {0, ..., m-1}
  static ObjectSet first(int m);

  std::uint64_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int object) const {
    return object >= 0 && object < kMaxObjects && ((bits_ >> object) & 1U);
  }
  bool is_subset_of(ObjectSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  bool intersects(ObjectSet other) const { return (bits_ & other.bits_) != 0; }
  // Lowest member; the set must be nonempty.
  int front() const { return std::countr_zero(bits_); }

  void insert(int object);
  void erase(int object);
  ObjectSet with(int object) const;
  ObjectSet without(int object) const;

  std::vector<int> to_vector() const;

  Iterator begin() const { return Iterator(bits_); }
  Iterator end() const { return Iterator(0); }

  friend ObjectSet operator|(ObjectSet a, ObjectSet b) {
    return ObjectSet(a.bits_ | b.bits_);
  }
  friend ObjectSet operator&(ObjectSet a, ObjectSet b) {
    return ObjectSet(a.bits_ & b.bits_);
  }
  friend ObjectSet operator-(ObjectSet a, ObjectSet b) {
    return ObjectSet(a.bits_ & ~b.bits_);
  }
  friend bool operator==(ObjectSet, ObjectSet) = default;
  friend auto operator<=>(ObjectSet, ObjectSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// An add-MARA instance: n agents, m objects, non-negative rational weights.
// Optionally carries the axis of a single-peaked profile.
class Instance {
 public:
  explicit Instance(std::vector<std::vector<Rational>> weights,
                    std::optional<std::vector<int>> axis = std::nullopt);

  static Instance from_integers(
      const std::vector<std::vector<long>>& weights,
      std::optional<std::vector<int>> axis = std::nullopt);

  int agents() const { return agents_; }
  int objects() const { return objects_; }
  ObjectSet all_objects() const { return ObjectSet::first(objects_); }

  // Checked access; throws IndexError.
  const Rational& weight(int agent, int object) const;
  // Unchecked row view.
  std::span<const Rational> row(int agent) const {
    return {weights_.data() + static_cast<std::size_t>(agent) * objects_,
            static_cast<std::size_t>(objects_)};
  }

  const std::optional<std::vector<int>>& axis() const { return axis_; }

  void check_agent(int agent) const;
  void check_object(int object) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int agents_;
  int objects_;
  std::vector<Rational> weights_;  // row-major, agents_ x objects_
  std::optional<std::vector<int>> axis_;
};

// Disjoint bundles, one per agent, covering `scope()`. A full allocation
// covers every object of the instance.
class Allocation {
 public:
  Allocation(int objects, std::vector<ObjectSet> bundles);

  // owner[k] is the agent receiving object k.
  static Allocation from_owners(int agents, std::span<const int> owner);

  int agents() const { return static_cast<int>(bundles_.size()); }
  int objects() const { return objects_; }
  const ObjectSet& bundle(int agent) const { return bundles_.at(agent); }
  const std::vector<ObjectSet>& bundles() const { return bundles_; }
  ObjectSet scope() const { return scope_; }
  bool is_full() const { return scope_ == ObjectSet::first(objects_); }

  // Agent holding `object`, if the object is in scope.
  std::optional<int> owner(int object) const;

  // Sub-allocation on `scope() & objects`.
  Allocation restricted_to(ObjectSet objects) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation& a, const Allocation& b) {
    return a.bundles_ <=> b.bundles_;
  }

 private:
  int objects_;
  std::vector<ObjectSet> bundles_;
  ObjectSet scope_;
};

// Throws unless the allocation has the instance's shape.
void check_shape(const Instance& instance, const Allocation& allocation);
void check_full(const Instance& instance, const Allocation& allocation);

Rational utility(const Instance& instance, int agent, ObjectSet bundle);

// Objects of `objects` with maximal weight for `agent` (all ties).
ObjectSet best_objects(const Instance& instance, int agent, ObjectSet objects);

// No agent holds one of her top objects within the allocation's scope.
bool is_frustrating(const Instance& instance, const Allocation& allocation);

bool is_strict_on_objects(const Instance& instance);
bool is_strict_on_shares(const Instance& instance);
bool is_same_order(const Instance& instance);
// `axis` lists the objects from left to right.
bool is_single_peaked(const Instance& instance, std::span<const int> axis);

// Each row scaled to sum to one.
Instance normalize(const Instance& instance);

// n^m, or CapacityError if it exceeds `budget`.
std::uint64_t count_allocations(int agents, int objects, std::uint64_t budget);

// The allocation with rank `index` in enumeration order: a base-n counter
// over object owners, object 0 being the most significant digit.
Allocation allocation_at(int agents, int objects, std::uint64_t index);

// Single-consumer stream over the full allocations, starting at any rank.
class AllocationStream {
 public:
  explicit AllocationStream(const Instance& instance,
                            std::uint64_t budget = kDefaultEnumerationBudget,
                            std::uint64_t start = 0);

  std::uint64_t size() const { return total_; }
  std::uint64_t position() const { return index_; }
  std::optional<Allocation> next();

 private:
  int agents_;
  int objects_;
  std::uint64_t total_;
  std::uint64_t index_;
  std::vector<int> owner_;
};

std::vector<Allocation> enumerate_allocations(
    const Instance& instance,
    std::uint64_t budget = kDefaultEnumerationBudget);

// u_i(B) for every agent and every one of the 2^m bundles.
class BundleUtilities {
 public:
  explicit BundleUtilities(const Instance& instance);

  const Rational& operator()(int agent, ObjectSet bundle) const {
    return table_[static_cast<std::size_t>(agent) * stride_ + bundle.bits()];
  }
  int agents() const { return agents_; }
  int objects() const { return objects_; }

 private:
  int agents_;
  int objects_;
  std::size_t stride_;
  std::vector<Rational> table_;
};

enum class GeneratorModel { kUniform, kSinglePeaked };

struct GeneratorConfig {
  GeneratorModel model = GeneratorModel::kUniform;
  int agents = 3;
  int objects = 8;
  long weight_cap = 100;
  std::uint64_t seed = 0;
  int count = 1;
};

void validate(const GeneratorConfig& config);

// The `index`-th instance of the family; depends only on (config, index).
// Single-peaked instances carry the identity axis.
Instance generate_instance(const GeneratorConfig& config, int index);
std::vector<Instance> generate(const GeneratorConfig& config);

std::string_view to_string(GeneratorModel model);
GeneratorModel parse_model(std::string_view text);

// Instance file format:
//   n m
//   <m weights>   (n lines; integers or p/q)
//   axis: k1 ... km   (optional, 1-based)
// '#' starts a comment.
Instance parse_instance(std::string_view text);
std::string format_instance(const Instance& instance);

// "1,4|2|3": agent 1 gets {1,4}, agent 2 gets {2}, agent 3 gets {3}.
// Empty bundles are written "-"; an empty field is accepted on input.
Allocation parse_allocation(std::string_view text, int agents, int objects);
std::string format_allocation(const Allocation& allocation);
// "1,4" / "-"
std::string format_object_set(ObjectSet objects);

}  // namespace fairdiv

#endif  // FAIRDIV_CORE_HPP
