#include "core/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "core/disc.hpp"
#include "core/encoder.hpp"
#include "core/linalg.hpp"
#include "core/matrix_io.hpp"
#include "core/photonic.hpp"
#include "core/rng.hpp"
#include "core/states.hpp"
#include "core/tomo.hpp"
#include "core/train.hpp"

namespace qae {

namespace {

using json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

[[noreturn]] void config_error(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(section + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) config_error("unknown key '" + item.key() + "' in " + section);
  }
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) config_error(where + " must be a number");
  return j.get<double>();
}

std::vector<double> number_list(const json& j, const std::string& where) {
  if (!j.is_array()) config_error(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(require_number(item, where));
  return out;
}

std::vector<complexd> complex_list(const json& j, const std::string& where) {
  const std::vector<double> flat = number_list(j, where);
  if (flat.size() % 2 != 0) config_error(where + " needs interleaved re, im pairs");
  std::vector<complexd> out;
  out.reserve(flat.size() / 2);
  for (std::size_t i = 0; i + 1 < flat.size(); i += 2) out.emplace_back(flat[i], flat[i + 1]);
  return out;
}

// State spec: {"amplitudes": [8 reals re,im x RH,RV,LH,LV]} or
// {"alphas": [3 radians]} or {"alphas_over_pi": [3]} or {"basis": "RH"}.
PureState parse_state(const json& j, const std::string& where) {
  check_keys(j, where, {"amplitudes", "alphas", "alphas_over_pi", "basis"});
  if (j.contains("amplitudes") + j.contains("alphas") + j.contains("alphas_over_pi") +
          j.contains("basis") !=
      1)
    config_error(where + " needs exactly one of amplitudes, alphas, alphas_over_pi, basis");
  if (j.contains("amplitudes")) {
    const auto amps = complex_list(j["amplitudes"], where + ".amplitudes");
    if (amps.size() != 4) config_error(where + ".amplitudes needs 4 complex entries");
    return two_qubit_state(amps);
  }
  if (j.contains("basis")) {
    if (!j["basis"].is_string()) config_error(where + ".basis must be a string label");
    const BasisLabel label = parse_basis_label(j["basis"].get<std::string>());
    return PureState::basis(4, basis_index(label));
  }
  const bool scaled = j.contains("alphas_over_pi");
  const auto vals = number_list(j[scaled ? "alphas_over_pi" : "alphas"], where);
  if (vals.size() != 3) config_error(where + " alpha triple needs 3 numbers");
  const double scale = scaled ? kPi : 1.0;
  return alpha_state(AlphaTriple{vals[0] * scale, vals[1] * scale, vals[2] * scale});
}

enum class TrashChoice { path, polarization };

TrashChoice parse_trash(const json& j, const std::string& where) {
  if (!j.is_string()) config_error(where + " must be \"path\" or \"polarization\"");
  const std::string s = j.get<std::string>();
  if (s == "path") return TrashChoice::path;
  if (s == "polarization") return TrashChoice::polarization;
  config_error(where + " must be \"path\" or \"polarization\"");
}

const char* trash_name(TrashChoice t) {
  return t == TrashChoice::path ? "path" : "polarization";
}

struct EnsembleSpec {
  Ensemble physical;   // path-major, as configured
  TrashChoice trash = TrashChoice::path;
};

EnsembleSpec parse_ensemble(const json& j) {
  check_keys(j, "ensemble", {"states", "priors", "trash"});
  if (!j.contains("states")) config_error("ensemble needs a states array");
  if (!j["states"].is_array()) config_error("ensemble.states must be an array");
  std::vector<PureState> states;
  for (std::size_t i = 0; i < j["states"].size(); ++i)
    states.push_back(parse_state(j["states"][i], "ensemble.states[" + std::to_string(i) + "]"));
  std::vector<double> priors;
  if (j.contains("priors")) priors = number_list(j["priors"], "ensemble.priors");
  EnsembleSpec out;
  if (j.contains("trash")) out.trash = parse_trash(j["trash"], "ensemble.trash");
  out.physical = make_ensemble(std::move(states), std::move(priors));
  return out;
}

// Trash-major view of the configured ensemble plus how the device embeds.
struct TaskBasis {
  Ensemble trash_major;
  DeviceLayout layout;
};

TaskBasis to_trash_major(const EnsembleSpec& spec) {
  if (spec.trash == TrashChoice::path)
    return TaskBasis{spec.physical, DeviceLayout::trash_first};
  return TaskBasis{swap_subsystems(spec.physical), DeviceLayout::trash_second};
}

PureState parse_reference(const json* j, std::size_t dim_trash) {
  if (j == nullptr) return PureState::basis(dim_trash, 0);
  const auto amps = complex_list(*j, "reference");
  if (amps.size() != dim_trash) config_error("reference needs 2 complex entries");
  return PureState(amps);
}

struct TrainSpec {
  TrainConfig cfg;
  std::size_t restarts = 1;
};

TrainSpec parse_train(const json& j) {
  check_keys(j, "train",
             {"a", "b", "max_outer", "patience", "stall_tol", "shots", "seed", "init_params",
              "max_iterations", "restarts"});
  TrainSpec out;
  if (j.contains("a")) out.cfg.a = require_number(j["a"], "train.a");
  if (j.contains("b")) out.cfg.b = require_number(j["b"], "train.b");
  if (j.contains("max_outer"))
    out.cfg.max_outer = static_cast<std::size_t>(require_number(j["max_outer"], "train.max_outer"));
  if (j.contains("patience"))
    out.cfg.patience = static_cast<std::size_t>(require_number(j["patience"], "train.patience"));
  if (j.contains("stall_tol")) out.cfg.stall_tol = require_number(j["stall_tol"], "train.stall_tol");
  if (j.contains("shots")) {
    if (j["shots"].is_string()) {
      if (j["shots"].get<std::string>() != "exact")
        config_error("train.shots must be a count or \"exact\"");
      out.cfg.shots = 0;
    } else {
      out.cfg.shots = static_cast<long>(require_number(j["shots"], "train.shots"));
    }
  }
  if (j.contains("seed"))
    out.cfg.seed = static_cast<std::uint64_t>(require_number(j["seed"], "train.seed"));
  if (j.contains("max_iterations"))
    out.cfg.max_iterations =
        static_cast<std::size_t>(require_number(j["max_iterations"], "train.max_iterations"));
  if (j.contains("restarts")) {
    const double r = require_number(j["restarts"], "train.restarts");
    if (r < 1) config_error("train.restarts must be at least 1");
    out.restarts = static_cast<std::size_t>(r);
  }
  if (j.contains("init_params")) {
    const json& p = j["init_params"];
    check_keys(p, "train.init_params", {"v1", "v2", "vr", "vl"});
    std::array<double, kDeviceParamCount> flat{};
    const char* stages[4] = {"v1", "v2", "vr", "vl"};
    for (std::size_t s = 0; s < 4; ++s) {
      if (!p.contains(stages[s])) config_error("train.init_params needs all four stages");
      const json& stage = p[stages[s]];
      check_keys(stage, std::string("train.init_params.") + stages[s],
                 {"qwp1", "hwp", "qwp2", "phase"});
      const char* fields[4] = {"qwp1", "hwp", "qwp2", "phase"};
      for (std::size_t f = 0; f < 4; ++f) {
        if (!stage.contains(fields[f])) config_error("init_params stage needs qwp1, hwp, qwp2, phase");
        flat[s * 4 + f] = require_number(stage[fields[f]], "train.init_params");
      }
    }
    out.cfg.init_params = device_from_array(flat);
  }
  return out;
}

json device_params_json(const DeviceParams& d) {
  const auto flat = device_to_array(d);
  json out = json::object();
  const char* stages[4] = {"v1", "v2", "vr", "vl"};
  const char* fields[4] = {"qwp1", "hwp", "qwp2", "phase"};
  for (std::size_t s = 0; s < 4; ++s) {
    json stage = json::object();
    for (std::size_t f = 0; f < 4; ++f) stage[fields[f]] = flat[s * 4 + f];
    out[stages[s]] = std::move(stage);
  }
  return out;
}

struct ProblemSpec {
  DiscriminationProblem endpoints;  // physical basis, intervals discretized
  TrashChoice trash = TrashChoice::path;
  bool has_intervals = false;
  ComplexMatrix avg_rho_a;  // normalized group densities for the
  ComplexMatrix avg_rho_b;  // interval-average bound variant
  double weight_a = 0.0;
  double weight_b = 0.0;
};

PureState span_state(const PureState& zero, const PureState& one, double theta) {
  std::vector<complexd> amps(4, complexd(0.0));
  for (std::size_t i = 0; i < 4; ++i)
    amps[i] = std::cos(theta) * zero[i] + std::sin(theta) * one[i];
  return PureState(std::move(amps));
}

// Simpson rule over the interval's pure-state projectors.
ComplexMatrix interval_average_density(const PureState& zero, const PureState& one,
                                       double lo, double hi) {
  constexpr std::size_t segments = 200;  // even
  ComplexMatrix acc(4, 4);
  double weight_total = 0.0;
  for (std::size_t i = 0; i <= segments; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / segments;
    const double w = (i == 0 || i == segments) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * outer(span_state(zero, one, t));
    weight_total += w;
  }
  acc *= complexd(1.0 / weight_total);
  return acc;
}

ProblemSpec parse_problem(const json& j) {
  check_keys(j, "problem", {"group_a", "group_b", "span", "trash"});
  ProblemSpec out;
  if (j.contains("trash")) out.trash = parse_trash(j["trash"], "problem.trash");

  PureState zero = PureState::basis(4, 0);
  PureState one = PureState::basis(4, 1);
  if (j.contains("span")) {
    if (!j["span"].is_array() || j["span"].size() != 2) config_error("problem.span needs 2 labels");
    const auto l0 = parse_basis_label(j["span"][0].get<std::string>());
    const auto l1 = parse_basis_label(j["span"][1].get<std::string>());
    if (basis_index(l0) == basis_index(l1)) config_error("problem.span labels must differ");
    zero = PureState::basis(4, basis_index(l0));
    one = PureState::basis(4, basis_index(l1));
  }

  const auto parse_group = [&](const char* name, std::vector<WeightedState>& members,
                               ComplexMatrix& avg, double& weight) {
    if (!j.contains(name)) config_error(std::string("problem needs ") + name);
    if (!j[name].is_array() || j[name].empty())
      config_error(std::string("problem.") + name + " must be a nonempty array");
    avg = ComplexMatrix(4, 4);
    for (std::size_t i = 0; i < j[name].size(); ++i) {
      const std::string where = std::string("problem.") + name + "[" + std::to_string(i) + "]";
      const json& member = j[name][i];
      check_keys(member, where, {"theta_degrees", "theta_interval_degrees", "amplitudes", "prior"});
      if (!member.contains("prior")) config_error(where + " needs a prior");
      const double prior = require_number(member["prior"], where + ".prior");
      const int forms = member.contains("theta_degrees") +
                        member.contains("theta_interval_degrees") + member.contains("amplitudes");
      if (forms != 1)
        config_error(where + " needs exactly one of theta_degrees, theta_interval_degrees, amplitudes");
      if (member.contains("theta_degrees")) {
        const double theta = require_number(member["theta_degrees"], where) * kPi / 180.0;
        members.push_back(WeightedState{span_state(zero, one, theta), prior});
        avg += prior * outer(members.back().state);
      } else if (member.contains("amplitudes")) {
        const auto amps = complex_list(member["amplitudes"], where + ".amplitudes");
        if (amps.size() != 4) config_error(where + ".amplitudes needs 4 complex entries");
        members.push_back(WeightedState{PureState(amps), prior});
        avg += prior * outer(members.back().state);
      } else {
        const auto bounds = number_list(member["theta_interval_degrees"], where);
        if (bounds.size() != 2 || bounds[0] >= bounds[1])
          config_error(where + ".theta_interval_degrees needs an increasing [lo, hi] pair");
        const double lo = bounds[0] * kPi / 180.0;
        const double hi = bounds[1] * kPi / 180.0;
        // Endpoint discretization carries the training and the primary
        // bound; the interval average only feeds the secondary bound.
        members.push_back(WeightedState{span_state(zero, one, lo), prior / 2.0});
        members.push_back(WeightedState{span_state(zero, one, hi), prior / 2.0});
        avg += prior * interval_average_density(zero, one, lo, hi);
        out.has_intervals = true;
      }
      weight += prior;
    }
  };
  parse_group("group_a", out.endpoints.group_a, out.avg_rho_a, out.weight_a);
  parse_group("group_b", out.endpoints.group_b, out.avg_rho_b, out.weight_b);
  validate_problem(out.endpoints);
  if (out.weight_a > 0.0) out.avg_rho_a *= complexd(1.0 / out.weight_a);
  if (out.weight_b > 0.0) out.avg_rho_b *= complexd(1.0 / out.weight_b);
  return out;
}

json parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const std::exception& e) {
    throw std::invalid_argument("config: not valid JSON (" + std::string(e.what()) + ")");
  }
  return j;
}

std::string config_kind(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) config_error("missing string key 'kind'");
  return j["kind"].get<std::string>();
}

std::uint64_t config_seed(const json& j, const RunOptions& opts) {
  if (opts.seed) return *opts.seed;
  if (j.contains("seed")) return static_cast<std::uint64_t>(require_number(j["seed"], "seed"));
  return 0;
}

// Files are written under out_dir with the config's output_prefix glued on
// with an underscore.
class OutputSink {
 public:
  OutputSink(std::string dir, std::string prefix)
      : dir_(std::move(dir)), prefix_(std::move(prefix)) {
    std::filesystem::create_directories(dir_.empty() ? "." : dir_);
  }

  std::string file_name(const std::string& base) const {
    return prefix_.empty() ? base : prefix_ + "_" + base;
  }

  std::string path_for(const std::string& base) const {
    return (std::filesystem::path(dir_.empty() ? "." : dir_) / file_name(base)).string();
  }

  void write_text(const std::string& base, const std::string& body,
                  std::vector<std::string>& files) const {
    std::ofstream os(path_for(base));
    if (!os) throw std::runtime_error("cannot write " + path_for(base));
    os << body;
    files.push_back(file_name(base));
  }

 private:
  std::string dir_;
  std::string prefix_;
};

std::string trace_csv(const TrainTrace& trace) {
  std::string body = "iteration,cost,a,b,k\n";
  for (const auto& rec : trace.records) {
    body += std::to_string(rec.iteration);
    body += ',';
    body += format_double(rec.cost);
    body += ',';
    body += format_double(rec.a);
    body += ',';
    body += format_double(rec.b);
    body += ',';
    body += std::to_string(rec.k);
    body += '\n';
  }
  return body;
}

// Mean/std across restarts per iteration; traces that stopped early are
// padded with their last observed cost.
std::string aggregate_csv(const std::vector<TrainTrace>& traces) {
  std::size_t longest = 0;
  for (const auto& t : traces) longest = std::max(longest, t.records.size());
  std::string body = "iteration,mean_cost,std_cost\n";
  for (std::size_t i = 0; i < longest; ++i) {
    double sum = 0.0;
    double sq = 0.0;
    for (const auto& t : traces) {
      const double c =
          i < t.records.size() ? t.records[i].cost : t.records.back().cost;
      sum += c;
      sq += c * c;
    }
    const double n = static_cast<double>(traces.size());
    const double mean = sum / n;
    const double var = std::max(sq / n - mean * mean, 0.0);
    body += std::to_string(i + 1);
    body += ',';
    body += format_double(mean);
    body += ',';
    body += format_double(std::sqrt(var));
    body += '\n';
  }
  return body;
}

std::string matrix_text(const ComplexMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

std::string csv_grid(const ComplexMatrix& m, bool real_part) {
  std::string body;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c != 0) body += ',';
      body += format_double(real_part ? m(r, c).real() : m(r, c).imag());
    }
    body += '\n';
  }
  return body;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

struct RestartSummary {
  std::vector<TrainTrace> traces;
  std::size_t best = 0;
  double mean_final = 0.0;
  double std_final = 0.0;
};

RestartSummary run_restarts(const TrainConfig& base, const EncodingTask& task,
                            std::size_t restarts, std::uint64_t master_seed, int jobs) {
  RestartSummary out;
  out.traces.assign(restarts, TrainTrace{});
  const RngStream master(master_seed);
  parallel_for(restarts, jobs, [&](std::size_t r) {
    TrainConfig cfg = base;
    cfg.seed = master.substream(r).seed();
    out.traces[r] = train(cfg, task);
  });
  double sum = 0.0;
  double sq = 0.0;
  for (std::size_t r = 0; r < restarts; ++r) {
    const double c = out.traces[r].final_cost;
    sum += c;
    sq += c * c;
    if (c < out.traces[out.best].final_cost) out.best = r;
  }
  const double n = static_cast<double>(restarts);
  out.mean_final = sum / n;
  out.std_final = std::sqrt(std::max(sq / n - out.mean_final * out.mean_final, 0.0));
  return out;
}

void write_training_outputs(const RestartSummary& rs, const OutputSink& sink, json& summary,
                            std::vector<std::string>& files) {
  for (std::size_t r = 0; r < rs.traces.size(); ++r)
    sink.write_text("trace_" + std::to_string(r) + ".csv", trace_csv(rs.traces[r]), files);
  if (rs.traces.size() > 1) sink.write_text("aggregate.csv", aggregate_csv(rs.traces), files);

  json final_costs = json::array();
  for (const auto& t : rs.traces) final_costs.push_back(t.final_cost);
  summary["restarts"] = rs.traces.size();
  summary["final_costs"] = std::move(final_costs);
  summary["mean_final_cost"] = rs.mean_final;
  summary["std_final_cost"] = rs.std_final;
  summary["best_restart"] = rs.best;
  const TrainTrace& best = rs.traces[rs.best];
  summary["final_cost"] = best.final_cost;
  summary["final_params"] = device_params_json(best.final_params);
  json anneals = json::array();
  for (std::size_t it : best.anneal_iterations) anneals.push_back(it);
  summary["anneal_iterations"] = std::move(anneals);
  summary["restart_seed"] = best.seed;
}

json shots_json(long shots) {
  if (shots == 0) return json("exact");
  return json(shots);
}

long effective_shots(long config_shots, const RunOptions& opts) {
  if (opts.exact) return 0;
  if (opts.shots) return *opts.shots;
  return config_shots;
}

json encode_summary(const json& cfg) {
  if (!cfg.contains("ensemble")) config_error("encode needs an ensemble section");
  const EnsembleSpec spec = parse_ensemble(cfg["ensemble"]);
  const TaskBasis basis = to_trash_major(spec);
  const json* ref_json = cfg.contains("reference") ? &cfg["reference"] : nullptr;
  const PureState ref = parse_reference(ref_json, basis.trash_major.dim_trash);

  const EncoderSolution sol = perfect_encoder(basis.trash_major, ref);
  json summary = json::object();
  summary["kind"] = "encode";
  summary["trash"] = trash_name(spec.trash);
  summary["states"] = basis.trash_major.states.size();
  summary["rank"] = sol.rank;
  summary["lossless"] = sol.lossless;
  summary["cost"] = sol.achieved_cost;
  summary["max_fidelity_bound"] = max_fidelity_bound(ensemble_density(basis.trash_major));
  return summary;
}

RunResult run_encode(const json& cfg, const OutputSink& sink) {
  check_keys(cfg, "config", {"kind", "seed", "output_prefix", "out_dir", "ensemble", "reference"});
  json summary = encode_summary(cfg);
  // Rebuild the solution for the unitary export; cheap and keeps
  // encode_summary shared with the report path.
  const EnsembleSpec spec = parse_ensemble(cfg["ensemble"]);
  const TaskBasis basis = to_trash_major(spec);
  const json* ref_json = cfg.contains("reference") ? &cfg["reference"] : nullptr;
  const PureState ref = parse_reference(ref_json, basis.trash_major.dim_trash);
  const EncoderSolution sol = perfect_encoder(basis.trash_major, ref);

  RunResult out;
  sink.write_text("encoder_unitary.txt", matrix_text(sol.unitary), out.files);
  json files = json::array();
  for (const auto& f : out.files) files.push_back(f);
  summary["files"] = std::move(files);
  out.summary_json = summary.dump(2);
  sink.write_text("summary.json", out.summary_json + "\n", out.files);
  return out;
}

RunResult run_train(const json& cfg, const OutputSink& sink, const RunOptions& opts) {
  check_keys(cfg, "config",
             {"kind", "seed", "output_prefix", "out_dir", "ensemble", "reference", "train"});
  if (!cfg.contains("ensemble")) config_error("train needs an ensemble section");
  const EnsembleSpec spec = parse_ensemble(cfg["ensemble"]);
  const TaskBasis basis = to_trash_major(spec);
  const json* ref_json = cfg.contains("reference") ? &cfg["reference"] : nullptr;
  const PureState ref = parse_reference(ref_json, basis.trash_major.dim_trash);

  TrainSpec ts = cfg.contains("train") ? parse_train(cfg["train"]) : TrainSpec{};
  const std::uint64_t seed = opts.seed ? *opts.seed
                             : cfg.contains("seed")
                                 ? static_cast<std::uint64_t>(require_number(cfg["seed"], "seed"))
                                 : ts.cfg.seed;
  ts.cfg.shots = effective_shots(ts.cfg.shots, opts);

  const EncodingTask task = encoding_task(basis.trash_major, ref, basis.layout);
  const RestartSummary rs =
      run_restarts(ts.cfg, task, ts.restarts, seed, opts.jobs.value_or(1));

  json summary = json::object();
  summary["kind"] = "train";
  summary["trash"] = trash_name(spec.trash);
  summary["seed"] = seed;
  summary["shots"] = shots_json(ts.cfg.shots);
  summary["analytic_cost"] = perfect_encoder(basis.trash_major, ref).achieved_cost;
  RunResult out;
  write_training_outputs(rs, sink, summary, out.files);
  json files = json::array();
  for (const auto& f : out.files) files.push_back(f);
  summary["files"] = std::move(files);
  out.summary_json = summary.dump(2);
  sink.write_text("summary.json", out.summary_json + "\n", out.files);
  return out;
}

json bound_summary(const json& cfg) {
  if (!cfg.contains("problem")) config_error("discriminate needs a problem section");
  const ProblemSpec spec = parse_problem(cfg["problem"]);
  const HelstromResult h = helstrom_bound(spec.endpoints);
  json summary = json::object();
  summary["kind"] = "discriminate";
  summary["trash"] = trash_name(spec.trash);
  summary["bound"] = h.p_error;
  summary["trace_norm"] = h.trace_norm_m;
  if (spec.has_intervals) {
    summary["bound_interval_average"] =
        helstrom_two_density(spec.avg_rho_a, spec.weight_a, spec.avg_rho_b, spec.weight_b);
  }
  return summary;
}

RunResult run_discriminate(const json& cfg, const OutputSink& sink, const RunOptions& opts) {
  check_keys(cfg, "config",
             {"kind", "seed", "output_prefix", "out_dir", "problem", "train"});
  json summary = bound_summary(cfg);
  const ProblemSpec spec = parse_problem(cfg["problem"]);

  // Trash-major task: group a's trash goes to |0>, group b's to |1>.
  std::vector<PureState> states;
  std::vector<double> priors;
  std::vector<PureState> targets;
  const PureState target_a = PureState::basis(2, 0);
  const PureState target_b = PureState::basis(2, 1);
  const bool swap_needed = spec.trash == TrashChoice::polarization;
  for (const auto& member : spec.endpoints.group_a) {
    states.push_back(swap_needed ? swap_subsystems(member.state, 2, 2) : member.state);
    priors.push_back(member.prior);
    targets.push_back(target_a);
  }
  for (const auto& member : spec.endpoints.group_b) {
    states.push_back(swap_needed ? swap_subsystems(member.state, 2, 2) : member.state);
    priors.push_back(member.prior);
    targets.push_back(target_b);
  }
  EncodingTask task{make_ensemble(std::move(states), std::move(priors)), std::move(targets),
                    swap_needed ? DeviceLayout::trash_second : DeviceLayout::trash_first};

  TrainSpec ts = cfg.contains("train") ? parse_train(cfg["train"]) : TrainSpec{};
  const std::uint64_t seed = opts.seed ? *opts.seed
                             : cfg.contains("seed")
                                 ? static_cast<std::uint64_t>(require_number(cfg["seed"], "seed"))
                                 : ts.cfg.seed;
  ts.cfg.shots = effective_shots(ts.cfg.shots, opts);

  const RestartSummary rs =
      run_restarts(ts.cfg, task, ts.restarts, seed, opts.jobs.value_or(1));

  summary["seed"] = seed;
  summary["shots"] = shots_json(ts.cfg.shots);
  RunResult out;
  write_training_outputs(rs, sink, summary, out.files);
  summary["gap_to_bound"] = rs.traces[rs.best].final_cost - summary["bound"].get<double>();
  json files = json::array();
  for (const auto& f : out.files) files.push_back(f);
  summary["files"] = std::move(files);
  out.summary_json = summary.dump(2);
  sink.write_text("summary.json", out.summary_json + "\n", out.files);
  return out;
}

ComplexMatrix parse_gate_target(const json& cfg, std::string& label) {
  const bool has_gate = cfg.contains("gate");
  const bool has_file = cfg.contains("target_file");
  if (has_gate == has_file) config_error("needs exactly one of gate, target_file");
  if (has_gate) {
    if (!cfg["gate"].is_string()) config_error("gate must be a string");
    label = cfg["gate"].get<std::string>();
    const auto gate = gate_from_name(label);
    if (!gate) config_error("unknown gate '" + label + "'");
    return gate_matrix(*gate);
  }
  label = cfg["target_file"].get<std::string>();
  return load_matrix(label);
}

RunResult run_tomography(const json& cfg, const OutputSink& sink, const RunOptions& opts) {
  check_keys(cfg, "config",
             {"kind", "seed", "output_prefix", "out_dir", "gate", "target_file", "solve",
              "starts", "iters"});
  std::string label;
  const ComplexMatrix target = parse_gate_target(cfg, label);
  const ProcessMatrix ideal = chi_of_unitary(target);

  RunResult out;
  sink.write_text("chi_real.csv", csv_grid(ideal.chi, true), out.files);
  sink.write_text("chi_imag.csv", csv_grid(ideal.chi, false), out.files);
  sink.write_text("chi.txt", matrix_text(ideal.chi), out.files);

  json summary = json::object();
  summary["kind"] = "tomography";
  summary["gate"] = label;
  summary["chi_trace"] = ideal.chi.trace().real();

  const bool solve = cfg.contains("solve") && cfg["solve"].is_boolean() && cfg["solve"].get<bool>();
  if (solve) {
    const std::size_t starts =
        cfg.contains("starts") ? static_cast<std::size_t>(require_number(cfg["starts"], "starts")) : 16;
    const std::size_t iters =
        cfg.contains("iters") ? static_cast<std::size_t>(require_number(cfg["iters"], "iters")) : 600;
    RngStream rng(config_seed(cfg, opts));
    const SolveResult sol = solve_device_params(target, starts, iters, rng);
    const ProcessMatrix solved = chi_of_unitary(device_unitary(sol.params));
    sink.write_text("chi_solved_real.csv", csv_grid(solved.chi, true), out.files);
    sink.write_text("chi_solved_imag.csv", csv_grid(solved.chi, false), out.files);
    summary["residual"] = sol.residual;
    summary["process_fidelity"] = process_fidelity(ideal, solved);
    summary["solved_params"] = device_params_json(sol.params);
  }

  json files = json::array();
  for (const auto& f : out.files) files.push_back(f);
  summary["files"] = std::move(files);
  out.summary_json = summary.dump(2);
  sink.write_text("summary.json", out.summary_json + "\n", out.files);
  return out;
}

RunResult run_solve_gate(const json& cfg, const OutputSink& sink, const RunOptions& opts) {
  check_keys(cfg, "config",
             {"kind", "seed", "output_prefix", "out_dir", "gate", "target_file", "starts", "iters"});
  std::string label;
  const ComplexMatrix target = parse_gate_target(cfg, label);
  const std::size_t starts =
      cfg.contains("starts") ? static_cast<std::size_t>(require_number(cfg["starts"], "starts")) : 16;
  const std::size_t iters =
      cfg.contains("iters") ? static_cast<std::size_t>(require_number(cfg["iters"], "iters")) : 600;
  RngStream rng(config_seed(cfg, opts));
  const SolveResult sol = solve_device_params(target, starts, iters, rng);
  const ComplexMatrix realized = device_unitary(sol.params);

  json summary = json::object();
  summary["kind"] = "solve-gate";
  summary["gate"] = label;
  summary["residual"] = sol.residual;
  summary["start_index"] = sol.start_index;
  summary["process_fidelity"] = process_fidelity(chi_of_unitary(target), chi_of_unitary(realized));
  summary["solved_params"] = device_params_json(sol.params);

  RunResult out;
  sink.write_text("solved_unitary.txt", matrix_text(realized), out.files);
  json files = json::array();
  for (const auto& f : out.files) files.push_back(f);
  summary["files"] = std::move(files);
  out.summary_json = summary.dump(2);
  sink.write_text("summary.json", out.summary_json + "\n", out.files);
  return out;
}

OutputSink make_sink(const json& cfg, const RunOptions& opts) {
  std::string dir = opts.out_dir.value_or("");
  if (dir.empty() && cfg.contains("out_dir")) {
    if (!cfg["out_dir"].is_string()) config_error("out_dir must be a string");
    dir = cfg["out_dir"].get<std::string>();
  }
  std::string prefix;
  if (cfg.contains("output_prefix")) {
    if (!cfg["output_prefix"].is_string()) config_error("output_prefix must be a string");
    prefix = cfg["output_prefix"].get<std::string>();
  }
  return OutputSink(dir, prefix);
}

}  // namespace

RunResult run_experiment(const std::string& config_path, const RunOptions& opts) {
  const json cfg = parse_config_file(config_path);
  const std::string kind = config_kind(cfg);
  const OutputSink sink = make_sink(cfg, opts);
  if (kind == "encode") return run_encode(cfg, sink);
  if (kind == "train") return run_train(cfg, sink, opts);
  if (kind == "discriminate") return run_discriminate(cfg, sink, opts);
  if (kind == "tomography") return run_tomography(cfg, sink, opts);
  if (kind == "solve-gate") return run_solve_gate(cfg, sink, opts);
  config_error("unknown kind '" + kind + "'");
}

std::string encode_report(const std::string& config_path) {
  const json cfg = parse_config_file(config_path);
  const std::string kind = config_kind(cfg);
  if (kind != "encode" && kind != "train")
    config_error("encode report needs a config with an ensemble section");
  return encode_summary(cfg).dump(2);
}

std::string bound_report(const std::string& config_path) {
  const json cfg = parse_config_file(config_path);
  const std::string kind = config_kind(cfg);
  if (kind != "discriminate") config_error("bound report needs a discriminate config");
  return bound_summary(cfg).dump(2);
}

}  // namespace qae
