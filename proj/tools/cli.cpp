#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "fairdiv/core.hpp"
#include "fairdiv/deals.hpp"
#include "fairdiv/efficiency.hpp"
#include "fairdiv/experiment.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/sequences.hpp"

namespace fairdiv::cli {
namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return text.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

Instance load_instance(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

struct GenOptions {
  std::string model = "uniform";
  GeneratorConfig config;
  std::string out;
  bool normalize = false;
};

struct QueryOptions {
  std::string instance;
  std::string allocation;
  std::string sequence;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

struct ExperimentOptions {
  std::string model = "uniform";
  ExperimentConfig config;
  std::string csv = "experiment.csv";
  std::string summary;
  std::string plot;
  std::string dump;
};

void add_generator_flags(CLI::App& app, std::string& model,
                         GeneratorConfig& config) {
  app.add_option("--model", model, "uniform | single-peaked")
      ->capture_default_str();
  app.add_option("--agents", config.agents)->capture_default_str();
  app.add_option("--objects", config.objects)->capture_default_str();
  app.add_option("--count", config.count)->capture_default_str();
  app.add_option("--seed", config.seed)->capture_default_str();
  app.add_option("--weight-cap", config.weight_cap,
                 "largest integer weight drawn")
      ->capture_default_str();
}

std::string manifest(const GeneratorConfig& c, bool normalized) {
  std::ostringstream out;
  out << "model " << to_string(c.model) << '\n'
      << "agents " << c.agents << '\n'
      << "objects " << c.objects << '\n'
      << "count " << c.count << '\n'
      << "seed " << c.seed << '\n'
      << "weight_cap " << c.weight_cap << '\n'
      << "normalized " << (normalized ? "yes" : "no") << '\n';
  return out.str();
}

int cmd_gen(GenOptions& o, std::ostream& out) {
  o.config.model = parse_model(o.model);
  validate(o.config);
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (int i = 0; i < o.config.count; ++i) {
    Instance instance = generate_instance(o.config, i);
    if (o.normalize) instance = normalize(instance);
    std::ostringstream name;
    name << "inst_" << std::setw(4) << std::setfill('0') << i << ".txt";
    write_file(dir / name.str(), format_instance(instance));
  }
  write_file(dir / "manifest.txt", manifest(o.config, o.normalize));
  out << "wrote " << o.config.count << " instances to " << dir.string()
      << '\n';
  return kExitOk;
}

void print_utilities(std::ostream& out, const Instance& instance,
                     const Allocation& allocation) {
  const auto profile = utility_profile(instance, allocation);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << "utility " << i + 1 << ": " << to_string(profile[i]) << '\n';
  }
}

void print_efficiency(std::ostream& out, const Instance& instance,
                      const Allocation& allocation, std::uint64_t budget) {
  const ParetoVerdict pareto = pareto_check(instance, allocation, budget);
  const SequenceabilityVerdict seq = sequence_of(instance, allocation);
  EfficiencyLevel level = EfficiencyLevel::kNone;
  std::optional<CycleDeal> swap;
  if (pareto.optimal) {
    level = EfficiencyLevel::kParetoOptimal;
  } else if (std::holds_alternative<Sequence>(seq)) {
    level = EfficiencyLevel::kSequenceable;
  } else if (instance.agents() >= 2) {
    swap = find_improving_cycle(instance, allocation, 2, 1,
                                DealStrength::kStrict);
    if (!swap) level = EfficiencyLevel::kSwapOptimal;
  }
  out << "efficiency: " << to_string(level) << '\n';
  if (pareto.dominated_by) {
    out << "dominated by: " << format_allocation(*pareto.dominated_by) << '\n';
  }
  if (const auto* s = std::get_if<Sequence>(&seq)) {
    out << "sequence: " << format_sequence(*s) << '\n';
  } else {
    const auto& witness = std::get<NonSequenceable>(seq).witness;
    out << "frustrating on " << format_object_set(witness.scope()) << ": "
        << format_allocation(witness) << '\n';
    if (const auto cycle = improving_cycle_from_frustration(instance,
                                                            allocation)) {
      out << "improving cycle: " << format_deal(*cycle) << '\n';
    }
  }
  if (swap) out << "improving swap: " << format_deal(*swap) << '\n';
}

void print_fairness(std::ostream& out, const Instance& instance,
                    const Allocation& allocation, std::uint64_t budget) {
  if (const auto prices = ceei_test(instance, allocation)) {
    out << "fairness: " << to_string(FairnessLevel::kCeei) << '\n'
        << "prices: " << format_prices(*prices) << '\n';
    return;
  }
  const FairnessLevel level = fairness_level(instance, allocation, budget);
  out << "fairness: " << to_string(level) << '\n';
}

int cmd_analyze(const QueryOptions& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance);
  const Allocation allocation =
      parse_allocation(o.allocation, instance.agents(), instance.objects());
  check_full(instance, allocation);
  count_allocations(instance.agents(), instance.objects(), o.budget);
  out << "allocation: " << format_allocation(allocation) << '\n';
  print_utilities(out, instance, allocation);
  print_efficiency(out, instance, allocation, o.budget);
  print_fairness(out, instance, allocation, o.budget);
  return kExitOk;
}

int cmd_classify(const QueryOptions& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance);
  const Allocation allocation =
      parse_allocation(o.allocation, instance.agents(), instance.objects());
  check_full(instance, allocation);
  out << "efficiency: "
      << to_string(efficiency_level(instance, allocation, o.budget)) << '\n'
      << "fairness: "
      << to_string(fairness_level(instance, allocation, o.budget)) << '\n';
  return kExitOk;
}

int cmd_sequence(const QueryOptions& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance);
  if (!o.sequence.empty()) {
    const Sequence sequence =
        parse_sequence(o.sequence, instance.agents(), instance.objects());
    for (const auto& a : execute_all(instance, sequence)) {
      out << format_allocation(a) << '\n';
    }
    return kExitOk;
  }
  const Allocation allocation =
      parse_allocation(o.allocation, instance.agents(), instance.objects());
  check_full(instance, allocation);
  const auto verdict = sequence_of(instance, allocation);
  if (const auto* s = std::get_if<Sequence>(&verdict)) {
    out << "sequenceable: " << format_sequence(*s) << '\n';
  } else {
    out << "non-sequenceable: "
        << format_allocation(std::get<NonSequenceable>(verdict).witness)
        << '\n';
  }
  return kExitOk;
}

std::string to_text(auto&& writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

int cmd_experiment(ExperimentOptions& o, std::ostream& out) {
  o.config.generator.model = parse_model(o.model);
  o.config.keep_levels = !o.dump.empty();
  const ExperimentResult result = run_experiment(o.config);
  const ExperimentSummary summary =
      summarize(o.config.generator, result.matrices);

  const std::string summary_path =
      o.summary.empty() ? fs::path(o.csv).replace_extension().string() +
                              ".summary.csv"
                        : o.summary;
  write_file(o.csv, to_text([&](std::ostream& s) {
               write_instance_csv(s, result.matrices);
             }));
  write_file(summary_path, to_text([&](std::ostream& s) {
               write_summary_csv(s, summary);
             }));
  if (!o.plot.empty()) {
    write_file(o.plot, to_text([&](std::ostream& s) {
                 write_plot_table(s, summary);
               }));
  }
  if (!o.dump.empty()) {
    write_file(o.dump, to_text([&](std::ostream& s) {
                 write_levels(s, o.config.generator, result);
               }));
  }
  out << to_text([&](std::ostream& s) { write_plot_table(s, summary); });
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("Efficiency and fairness classification of allocations",
               "fairdiv");
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate random instances");
  add_generator_flags(*gen_cmd, gen.model, gen.config);
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_flag("--normalize", gen.normalize, "scale rows to sum to 1");

  QueryOptions query;
  auto add_query = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--instance", query.instance, "instance file")->required();
    cmd->add_option("--budget", query.budget, "enumeration budget")
        ->capture_default_str();
    return cmd;
  };
  auto* analyze_cmd = add_query("analyze", "report on one allocation");
  analyze_cmd->add_option("--allocation", query.allocation, "e.g. 1,4|2|3")
      ->required();
  auto* classify_cmd = add_query("classify", "levels of one allocation");
  classify_cmd->add_option("--allocation", query.allocation)->required();
  auto* sequence_cmd =
      add_query("sequence", "execute a sequence or find one for an allocation");
  auto* target = sequence_cmd->add_option_group("target");
  target->add_option("--sequence", query.sequence, "e.g. 2,1,2");
  target->add_option("--allocation", query.allocation);
  target->require_option(1);

  ExperimentOptions exp;
  auto* exp_cmd =
      app.add_subcommand("experiment", "classify every allocation of a family");
  add_generator_flags(*exp_cmd, exp.model, exp.config.generator);
  exp_cmd->add_option("--budget", exp.config.budget)->capture_default_str();
  exp_cmd->add_option("--jobs", exp.config.jobs, "worker threads, 0 = auto")
      ->capture_default_str();
  exp_cmd->add_option("--csv", exp.csv, "per-instance counts")
      ->capture_default_str();
  exp_cmd->add_option("--summary", exp.summary,
                      "summary CSV (default: <csv stem>.summary.csv)");
  exp_cmd->add_option("--plot", exp.plot, "whitespace-separated table");
  exp_cmd->add_option("--dump", exp.dump, "per-allocation levels");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*analyze_cmd) return cmd_analyze(query, out);
    if (*classify_cmd) return cmd_classify(query, out);
    if (*sequence_cmd) return cmd_sequence(query, out);
    return cmd_experiment(exp, out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IndexError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace fairdiv::cli
