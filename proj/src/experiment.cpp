#include "fairdiv/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "fairdiv/deals.hpp"
#include "fairdiv/sequences.hpp"

namespace fairdiv {

std::uint64_t ClassificationMatrix::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : counts) {
    for (const auto c : row) sum += c;
  }
  return sum;
}

InstanceClassifier::InstanceClassifier(const Instance& instance,
                                       std::uint64_t budget)
    : instance_(instance),
      budget_(budget),
      pareto_(pareto_optimal_flags(instance, budget)),
      table_(instance),
      shares_(share_thresholds(instance, budget)) {}

AllocationClass InstanceClassifier::classify(
    std::uint64_t rank, const Allocation& allocation) const {
  AllocationClass out{};
  if (pareto_.at(rank)) {
    out.efficiency = EfficiencyLevel::kParetoOptimal;
  } else if (is_sequenceable(instance_, allocation)) {
    out.efficiency = EfficiencyLevel::kSequenceable;
  } else if (instance_.agents() >= 2 &&
             is_swap_optimal(instance_, allocation)) {
    out.efficiency = EfficiencyLevel::kSwapOptimal;
  } else {
    out.efficiency = EfficiencyLevel::kNone;
  }
  out.fairness = fairness_level(instance_, table_, shares_, allocation);
  return out;
}

ClassificationMatrix InstanceClassifier::classify_all(
    int instance_id, std::vector<AllocationClass>* levels) const {
  ClassificationMatrix matrix;
  matrix.instance_id = instance_id;
  AllocationStream stream(instance_, budget_);
  if (levels != nullptr) levels->reserve(stream.size());
  std::uint64_t rank = 0;
  while (auto a = stream.next()) {
    const AllocationClass c = classify(rank++, *a);
    ++matrix.at(c.fairness, c.efficiency);
    if (levels != nullptr) levels->push_back(c);
  }
  return matrix;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config.generator);
  count_allocations(config.generator.agents, config.generator.objects,
                    config.budget);
  const int count = config.generator.count;
  ExperimentResult result;
  result.matrices.resize(static_cast<std::size_t>(count));
  if (config.keep_levels) result.levels.resize(static_cast<std::size_t>(count));

  int jobs = config.jobs > 0
                 ? config.jobs
                 : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, count);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const int index = next.fetch_add(1);
      if (index >= count) return;
      try {
        const Instance instance =
            normalize(generate_instance(config.generator, index));
        const InstanceClassifier classifier(instance, config.budget);
        result.matrices[index] = classifier.classify_all(
            index, config.keep_levels ? &result.levels[index] : nullptr);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

ExperimentSummary summarize(const GeneratorConfig& config,
                            std::span<const ClassificationMatrix> matrices) {
  ExperimentSummary summary;
  summary.config = config;
  summary.instances = static_cast<int>(matrices.size());
  for (int f = 0; f < kFairnessLevels; ++f) {
    std::uint64_t row_total = 0;
    std::array<std::uint64_t, kEfficiencyLevels> pooled{};
    for (int e = 0; e < kEfficiencyLevels; ++e) {
      CellStats& cell = summary.cells[f][e];
      std::uint64_t sum = 0;
      bool first = true;
      for (const auto& m : matrices) {
        const std::uint64_t c = m.counts[f][e];
        cell.min = first ? c : std::min(cell.min, c);
        cell.max = first ? c : std::max(cell.max, c);
        first = false;
        sum += c;
      }
      cell.mean = matrices.empty()
                      ? Rational(0)
                      : Rational(mpz_class(std::to_string(sum)),
                                 mpz_class(static_cast<long>(matrices.size())));
      cell.mean.canonicalize();
      pooled[e] = sum;
      row_total += sum;
    }
    for (int e = 0; e < kEfficiencyLevels; ++e) {
      Rational& p = summary.proportions[f][e];
      if (row_total == 0) {
        p = 0;
      } else {
        p = Rational(mpz_class(std::to_string(pooled[e])),
                     mpz_class(std::to_string(row_total)));
        p.canonicalize();
      }
    }
  }
  return summary;
}

void write_instance_csv(std::ostream& out,
                        std::span<const ClassificationMatrix> matrices) {
  out << "instance_id,fairness,efficiency,count\n";
  for (const auto& m : matrices) {
    for (int f = 0; f < kFairnessLevels; ++f) {
      for (int e = 0; e < kEfficiencyLevels; ++e) {
        out << m.instance_id << ','
            << to_string(static_cast<FairnessLevel>(f)) << ','
            << to_string(static_cast<EfficiencyLevel>(e)) << ','
            << m.counts[f][e] << '\n';
      }
    }
  }
}

namespace {

void write_config_comment(std::ostream& out, const ExperimentSummary& s) {
  out << "# model=" << to_string(s.config.model)
      << " agents=" << s.config.agents << " objects=" << s.config.objects
      << " count=" << s.config.count << " seed=" << s.config.seed
      << " weight_cap=" << s.config.weight_cap << '\n';
}

}  // namespace

void write_summary_csv(std::ostream& out, const ExperimentSummary& summary) {
  write_config_comment(out, summary);
  out << "fairness,efficiency,min,max,mean,mean_decimal,proportion,"
         "proportion_decimal\n";
  for (int f = 0; f < kFairnessLevels; ++f) {
    for (int e = 0; e < kEfficiencyLevels; ++e) {
      const CellStats& c = summary.cells[f][e];
      const Rational& p = summary.proportions[f][e];
      out << to_string(static_cast<FairnessLevel>(f)) << ','
          << to_string(static_cast<EfficiencyLevel>(e)) << ',' << c.min << ','
          << c.max << ',' << to_string(c.mean) << ',' << to_decimal(c.mean, 3)
          << ',' << to_string(p) << ',' << to_decimal(p, 6) << '\n';
    }
  }
}

void write_plot_table(std::ostream& out, const ExperimentSummary& summary) {
  write_config_comment(out, summary);
  out << "fairness efficiency min mean max proportion\n";
  for (int f = 0; f < kFairnessLevels; ++f) {
    for (int e = 0; e < kEfficiencyLevels; ++e) {
      const CellStats& c = summary.cells[f][e];
      out << to_string(static_cast<FairnessLevel>(f)) << ' '
          << to_string(static_cast<EfficiencyLevel>(e)) << ' ' << c.min << ' '
          << to_decimal(c.mean, 3) << ' ' << c.max << ' '
          << to_decimal(summary.proportions[f][e], 6) << '\n';
    }
  }
}

void write_levels(std::ostream& out, const GeneratorConfig& config,
                  const ExperimentResult& result) {
  out << "instance_id,allocation,fairness,efficiency\n";
  for (std::size_t id = 0; id < result.levels.size(); ++id) {
    const auto& levels = result.levels[id];
    for (std::size_t rank = 0; rank < levels.size(); ++rank) {
      out << id << ",\""
          << format_allocation(
                 allocation_at(config.agents, config.objects, rank))
          << "\"," << to_string(levels[rank].fairness) << ','
          << to_string(levels[rank].efficiency) << '\n';
    }
  }
}

}  // namespace fairdiv
