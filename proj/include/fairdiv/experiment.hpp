#ifndef FAIRDIV_EXPERIMENT_HPP
#define FAIRDIV_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/efficiency.hpp"
#include "fairdiv/fairness.hpp"

namespace fairdiv {

struct AllocationClass {
  FairnessLevel fairness;
  EfficiencyLevel efficiency;
};

// Allocation counts per (fairness level, efficiency level) cell.
struct ClassificationMatrix {
  int instance_id = 0;
  std::array<std::array<std::uint64_t, kEfficiencyLevels>, kFairnessLevels>
      counts{};

  std::uint64_t& at(FairnessLevel f, EfficiencyLevel e) {
    return counts[static_cast<int>(f)][static_cast<int>(e)];
  }
  std::uint64_t at(FairnessLevel f, EfficiencyLevel e) const {
    return counts[static_cast<int>(f)][static_cast<int>(e)];
  }
  std::uint64_t total() const;
};

// Classifies allocations of one instance, sharing the per-instance work
// (Pareto frontier, bundle utilities, share thresholds).
class InstanceClassifier {
 public:
  explicit InstanceClassifier(const Instance& instance,
                              std::uint64_t budget = kDefaultEnumerationBudget);

  // `rank` is the allocation's position in enumeration order.
  AllocationClass classify(std::uint64_t rank,
                           const Allocation& allocation) const;

  // Every allocation; `levels`, when given, receives one entry per rank.
  ClassificationMatrix classify_all(
      int instance_id, std::vector<AllocationClass>* levels = nullptr) const;

 private:
  const Instance& instance_;
  std::uint64_t budget_;
  std::vector<bool> pareto_;
  BundleUtilities table_;
  ShareThresholds shares_;
};

struct ExperimentConfig {
  GeneratorConfig generator;
  std::uint64_t budget = kDefaultEnumerationBudget;
  // 0 = hardware concurrency.
  int jobs = 0;
  bool keep_levels = false;
};

struct ExperimentResult {
  std::vector<ClassificationMatrix> matrices;
  // Per instance, per allocation rank; filled when keep_levels is set.
  std::vector<std::vector<AllocationClass>> levels;
};

// Generates every instance, normalizes it and classifies all of its
// allocations. Instances are spread over worker threads; results are
// ordered by instance index whatever the thread count. Throws
// CapacityError before any work when n^m exceeds the budget.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct CellStats {
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  Rational mean;
};

struct ExperimentSummary {
  GeneratorConfig config;
  int instances = 0;
  std::array<std::array<CellStats, kEfficiencyLevels>, kFairnessLevels> cells{};
  // Share of each efficiency level among the allocations of a fairness
  // level, pooled over instances.
  std::array<std::array<Rational, kEfficiencyLevels>, kFairnessLevels>
      proportions{};
};

ExperimentSummary summarize(const GeneratorConfig& config,
                            std::span<const ClassificationMatrix> matrices);

// instance_id,fairness,efficiency,count
void write_instance_csv(std::ostream& out,
                        std::span<const ClassificationMatrix> matrices);
// fairness,efficiency,min,max,mean,mean_decimal,proportion,proportion_decimal
void write_summary_csv(std::ostream& out, const ExperimentSummary& summary);
// Whitespace-separated table for external plotting.
void write_plot_table(std::ostream& out, const ExperimentSummary& summary);
// instance_id,allocation,fairness,efficiency
void write_levels(std::ostream& out, const GeneratorConfig& config,
                  const ExperimentResult& result);

}  // namespace fairdiv

#endif  // FAIRDIV_EXPERIMENT_HPP
