#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <variant>

#include "caidgeo/report.hpp"
#include "caidgeo/specfile.hpp"

namespace {

using namespace caidgeo;
using nlohmann::ordered_json;

enum ExitCode {
  kOk = 0,
  kInputError = 2,
  kSolverError = 3,
  kPartial = 4,
  kViolations = 5,
};

int log_level() {
  const char* env = std::getenv("CAIDGEO_LOG");
  if (!env) return 0;
  std::string v(env);
  if (v == "debug") return 2;
  if (v == "info") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[caidgeo] " << msg << "\n";
}

struct CorpusParams {
  int n = 2;
  double p = 0.11;
  int zeta_n = 64;
  int trunc = 1000;
  double theta = M_PI / 4.0;
  int max_index = 10;
  int sides = 24;
};

using Instance = std::variant<corpus::ClassicalInstance, corpus::QuantumInstance>;

const std::vector<std::pair<std::string, std::string>>& corpus_listing() {
  static const std::vector<std::pair<std::string, std::string>> entries = {
      {"identity-n", "noiseless n-ary channel (--n)"},
      {"bsc-p", "binary symmetric channel with flip probability p (--p)"},
      {"example-1", "three-input channel with the inscribed-polygon constraint (--sides)"},
      {"example-2", "integer-input two-output channel, truncated (--max-index)"},
      {"zeta", "inverse-square/cube tail channel (--n, --trunc)"},
      {"appendix-b", "9x8 channel with a gradient-orthogonal kernel line"},
      {"cq-pure-pair", "two pure states at overlap angle theta (--theta)"},
      {"cq-commuting", "commuting (diagonal) qutrit channel"},
  };
  return entries;
}

bool corpus_is_quantum(const std::string& name) {
  return name.rfind("cq-", 0) == 0;
}

std::optional<Instance> resolve_corpus(const std::string& name,
                                       const CorpusParams& cp) {
  auto starts = [&](const char* prefix) { return name.rfind(prefix, 0) == 0; };
  if (name == "identity-n") return Instance{corpus::identity(cp.n)};
  if (starts("identity-")) {
    int n = std::atoi(name.c_str() + 9);
    if (n >= 1) return Instance{corpus::identity(n)};
  }
  if (name == "bsc-p") return Instance{corpus::bsc(cp.p)};
  if (starts("bsc-")) {
    double p = std::atof(name.c_str() + 4);
    if (p > 0 && p < 1) return Instance{corpus::bsc(p)};
  }
  if (name == "example-1") return Instance{corpus::example1(cp.sides)};
  if (name == "example-2") return Instance{corpus::example2(cp.max_index)};
  if (name == "zeta") return Instance{corpus::zeta(cp.zeta_n, cp.trunc)};
  if (name == "appendix-b" || name == "ppv-counterexample")
    return Instance{corpus::appendix_b()};
  if (name == "cq-pure-pair") return Instance{corpus::cq_pure_pair(cp.theta)};
  if (name == "cq-commuting") return Instance{corpus::cq_commuting()};
  return std::nullopt;
}

struct Inputs {
  Instance instance;
  std::string corpus_name;  // empty when loaded from a file
};

Inputs load_inputs(const std::string& file, const std::string& corpus_name,
                   const CorpusParams& cp) {
  if (!file.empty()) {
    SpecFile sf = parse_spec_file(file);
    if (sf.classical)
      return {Instance{corpus::ClassicalInstance{*sf.classical, sf.lam, sf.name, ""}},
              ""};
    return {Instance{corpus::QuantumInstance{*sf.quantum, sf.lam, sf.name, ""}}, ""};
  }
  auto inst = resolve_corpus(corpus_name, cp);
  if (!inst) {
    std::string msg = "unknown corpus name \"" + corpus_name + "\"; available:";
    for (const auto& [n, d] : corpus_listing()) msg += " " + n;
    throw std::invalid_argument(msg);
  }
  return {*inst, corpus_name};
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name, std::ios::binary);
  out << content;
}

std::vector<NeighborhoodSample> sharded_samples(const CapacitySolution& geo,
                                                const UnionOfCones& dlp,
                                                double delta, long count,
                                                std::uint64_t seed, int jobs) {
  jobs = std::max(1, jobs);
  std::vector<std::vector<NeighborhoodSample>> shards(jobs);
  std::vector<std::thread> workers;
  long per = count / jobs;
  for (int j = 0; j < jobs; ++j) {
    long mine = per + (j == 0 ? count % jobs : 0);
    workers.emplace_back([&, j, mine]() {
      shards[j] = sample_neighborhood(geo, dlp, delta, static_cast<int>(mine),
                                      seed + 1000ULL * static_cast<unsigned>(j));
    });
  }
  for (auto& w : workers) w.join();
  std::vector<NeighborhoodSample> all;
  for (auto& s : shards)
    all.insert(all.end(), std::make_move_iterator(s.begin()),
               std::make_move_iterator(s.end()));
  return all;
}

ordered_json operator_json(const CMat& m) {
  ordered_json rows = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

// --- subcommands -----------------------------------------------------------

int cmd_capacity(const Inputs& in, double tolerance) {
  Report rep;
  if (std::holds_alternative<corpus::ClassicalInstance>(in.instance)) {
    const auto& inst = std::get<corpus::ClassicalInstance>(in.instance);
    auto sol = solve_capacity(inst.channel, inst.lam, tolerance);
    rep.body["channel"] = inst.name;
    rep.body["kind"] = "classical";
    rep.body["capacity"] = capacity_block(sol);
    rep.body["provenance"] = provenance_block({0, tolerance, 0, 1}, sol.iterations);
  } else {
    const auto& inst = std::get<corpus::QuantumInstance>(in.instance);
    auto sol = q_solve_capacity(inst.channel, inst.lam, tolerance);
    rep.body["channel"] = inst.name;
    rep.body["kind"] = "classical-quantum";
    auto block = capacity_block(sol.geo);
    block.erase("center");
    block["center_operator"] = operator_json(sol.center.matrix());
    rep.body["capacity"] = block;
    rep.body["provenance"] = provenance_block({0, tolerance, 0, 1}, sol.geo.iterations);
  }
  std::cout << rep.to_json();
  return kOk;
}

// Growth probe for truncated channels: a diagonal second-moment entry that
// keeps climbing as the tail is extended proves the third-moment coefficient
// has no finite limit (A >= sqrt(tr Sigma)).
bool a_is_truncation_limited(const corpus::ClassicalInstance& inst,
                             const std::string& corpus_name,
                             const CorpusParams& cp) {
  if (corpus_name != "zeta") return false;
  auto probe = [&](int t) -> Vec {
    auto z = corpus::zeta(cp.zeta_n, t);
    Vec unif = Vec::Zero(z.channel.inputs());
    unif.tail(z.channel.inputs() - 1)
        .setConstant(1.0 / static_cast<double>(z.channel.inputs() - 1));
    Vec q = z.channel.matrix().transpose() * unif;
    return fisher_matrix(z.channel, q).m.diagonal();
  };
  (void)inst;
  Vec full = probe(cp.trunc), half = probe(std::max(cp.trunc / 2, 16));
  for (Index i = 0; i < full.size(); ++i)
    if (full[i] > 1.05 * half[i] + 1e-9) return true;
  return false;
}

int cmd_constants(const Inputs& in, int theorem, double tolerance,
                  const CorpusParams& cp) {
  Report rep;
  bool partial = false;
  if (theorem == 1 || theorem == 2) {
    if (!std::holds_alternative<corpus::ClassicalInstance>(in.instance))
      throw std::invalid_argument("theorems 1 and 2 apply to classical channels");
    const auto& inst = std::get<corpus::ClassicalInstance>(in.instance);
    auto pipe = build_pipeline(inst.channel, inst.lam, tolerance);
    rep.body["channel"] = inst.name;
    rep.body["capacity"] = capacity_block(pipe.sol);
    if (theorem == 1) {
      rep.body["theorem_1"] = theorem1_block(theorem1_constants(pipe.sol, pipe.dlp));
    } else {
      bool a_finite = !a_is_truncation_limited(inst, in.corpus_name, cp);
      auto t2 = theorem2_constants(pipe.sol, pipe.dlp, pipe.sigma, pipe.a, a_finite);
      rep.body["theorem_2"] = theorem2_block(t2);
      partial = !a_finite;
    }
    rep.body["provenance"] = provenance_block({0, tolerance, 0, 1}, pipe.sol.iterations);
  } else if (theorem == 3 || theorem == 4) {
    if (!std::holds_alternative<corpus::QuantumInstance>(in.instance))
      throw std::invalid_argument(
          "theorems 3 and 4 apply to classical-quantum channels");
    const auto& inst = std::get<corpus::QuantumInstance>(in.instance);
    auto pipe = q_capacity_and_theorems(inst.channel, inst.lam, tolerance);
    rep.body["channel"] = inst.name;
    rep.body["capacity"] = capacity_block(pipe.sol.geo);
    if (theorem == 3)
      rep.body["theorem_3"] = theorem1_block(pipe.t1);
    else
      rep.body["theorem_4"] = theorem2_block(pipe.t2);
    rep.body["provenance"] =
        provenance_block({0, tolerance, 0, 1}, pipe.sol.geo.iterations);
  } else {
    throw std::invalid_argument("--theorem must be 1, 2, 3, or 4");
  }
  std::cout << rep.to_json();
  return partial ? kPartial : kOk;
}

ordered_json example1_json() {
  auto r = example1_fourth_power();
  ordered_json j;
  j["capacity"] = r.capacity;
  j["ratio_limit"] = r.ratio_limit;
  j["fitted_exponent"] = r.fitted_exponent;
  j["taus"] = r.taus;
  j["gap_over_distance4"] = r.ratios;
  j["best_quadratic_coefficients"] = r.quad_coeffs;
  j["polygon_sides"] = r.polygon_sides;
  j["polygon_gamma"] = r.polygon_gamma;
  j["distance_residual"] = r.max_distance_residual;
  j["conclusion"] =
      "boundary gap decays like the fourth power of the distance; no fixed "
      "quadratic coefficient works for the ball constraint";
  return j;
}

ordered_json example2_json(int max_index) {
  auto r = example2_truncation(max_index);
  ordered_json j;
  j["max_index"] = r.max_index;
  j["capacity"] = r.capacity;
  j["caid_is_p1"] = r.caid_is_p1;
  j["distances"] = r.distances;
  j["info_gaps"] = r.info_gaps;
  j["info_increasing"] = r.info_increasing;
  j["taus"] = r.taus;
  j["segment_bounds"] = r.segment_bounds;
  j["conclusion"] =
      "distances stay at 1 while the information gap vanishes; any valid "
      "decay profile is forced to zero on [0, min(1, delta)]";
  return j;
}

ordered_json example3_json(const CorpusParams& cp) {
  std::vector<int> truncs;
  for (int t : {cp.trunc / 100, cp.trunc / 10, cp.trunc})
    if (t >= 25 && (truncs.empty() || t > truncs.back())) truncs.push_back(t);
  if (truncs.empty()) truncs = {cp.trunc};
  auto r = example3_zeta(cp.zeta_n, truncs);
  ordered_json j;
  j["n"] = r.n;
  j["threshold"] = r.threshold;
  j["truncations"] = r.truncations;
  j["sigma00"] = r.sigma00;
  j["sigma01"] = r.sigma01;
  j["a_values"] = r.a_values;
  j["capacity"] = r.capacity;
  j["capacity_expected"] = r.capacity_expected;
  j["tail_divergence"] = r.tail_divergence;
  j["tail_divergence_series"] = r.tail_divergence_series;
  j["a_lower_bound_only"] = r.a_lower_bound_only;
  return j;
}

ordered_json appendix_b_json() {
  auto r = appendix_b_counterexample();
  ordered_json j;
  j["epsilon"] = r.epsilon;
  j["capacity"] = r.capacity;
  j["kernel_direction"] = std::vector<double>(
      r.kernel_direction.data(), r.kernel_direction.data() + r.kernel_direction.size());
  j["grad_dot_kernel"] = r.grad_dot_u;
  j["refuting_p"] =
      std::vector<double>(r.refuting_p.data(), r.refuting_p.data() + r.refuting_p.size());
  j["v0"] = std::vector<double>(r.v0.data(), r.v0.data() + r.v0.size());
  j["v0_norm"] = r.v0_norm;
  j["v0_dot_grad"] = r.v0_dot_grad;
  j["linear_kernel_bound_refuted"] = r.refutes_linear_kernel_bound;
  return j;
}

int cmd_certify(const Inputs& in, int theorem, long samples, std::uint64_t seed,
                double tolerance, int jobs, const std::string& out_dir,
                const CorpusParams& cp) {
  Report rep;
  rep.body["channel"] = in.corpus_name.empty() ? "file" : in.corpus_name;

  // The counterexample corpora get their dedicated reports.
  if (in.corpus_name == "ppv-counterexample") {
    rep.body["counterexample"] = appendix_b_json();
    rep.body["provenance"] = provenance_block({seed, tolerance, samples, jobs}, 0);
    std::cout << rep.to_json();
    return kOk;
  }
  if (in.corpus_name == "example-1") {
    rep.body["fourth_power"] = example1_json();
    rep.body["provenance"] = provenance_block({seed, tolerance, samples, jobs}, 0);
    std::cout << rep.to_json();
    return kOk;
  }
  if (in.corpus_name == "example-2") {
    rep.body["truncation"] = example2_json(cp.max_index);
    rep.body["provenance"] = provenance_block({seed, tolerance, samples, jobs}, 0);
    std::cout << rep.to_json();
    return kOk;
  }
  if (in.corpus_name == "zeta") {
    rep.body["zeta"] = example3_json(cp);
    rep.body["provenance"] = provenance_block({seed, tolerance, samples, jobs}, 0);
    std::cout << rep.to_json();
    bool partial = rep.body["zeta"]["a_lower_bound_only"].get<bool>();
    return partial ? kPartial : kOk;
  }

  long violations = 0;
  std::vector<double> taus;
  for (int i = 0; i <= 10; ++i) taus.push_back(i / 10.0);

  if (std::holds_alternative<corpus::ClassicalInstance>(in.instance)) {
    if (theorem != 1 && theorem != 2)
      throw std::invalid_argument("classical certification needs --theorem 1 or 2");
    const auto& inst = std::get<corpus::ClassicalInstance>(in.instance);
    auto pipe = build_pipeline(inst.channel, inst.lam, tolerance);
    ClassicalChannelModel model(pipe.sol.channel);
    InfoFn info = [&](const Vec& p) { return model.info(p); };
    rep.body["capacity"] = capacity_block(pipe.sol);

    if (theorem == 1) {
      auto t1 = theorem1_constants(pipe.sol, pipe.dlp);
      rep.body["theorem_1"] = theorem1_block(t1);
      log_info("sampling " + std::to_string(samples) + " points");
      auto batch = sharded_samples(pipe.sol, pipe.dlp, t1.delta, samples, seed, jobs);
      auto cert = certify_theorem1(pipe, t1, batch);
      rep.body["certificate"] = certificate_block(cert);
      violations = cert.violations;
      write_file(out_dir, "samples.csv",
                 samples_csv(batch, info, pipe.sol.capacity, [&](double d) {
                   return pipe.sol.capacity - t1.gamma * d * d;
                 }));
    } else {
      auto t2 = theorem2_constants(pipe.sol, pipe.dlp, pipe.sigma, pipe.a);
      rep.body["theorem_2"] = theorem2_block(t2);
      double delta = t2.delta ? *t2.delta : 1.0;
      auto batch = sharded_samples(pipe.sol, pipe.dlp, delta, samples, seed, jobs);
      auto cert = certify_theorem2(pipe, t2, batch);
      rep.body["certificate"] = certificate_block(cert);
      violations = cert.violations;
      double a3 = std::pow(t2.a_value, 3.0);
      write_file(out_dir, "samples.csv",
                 samples_csv(batch, info, pipe.sol.capacity, [&](double d) {
                   return t2.gamma1 > 0
                              ? pipe.sol.capacity - t2.gamma1 * d
                              : pipe.sol.capacity - *t2.gamma2 * d * d +
                                    0.5 * a3 * d * d * d;
                 }));
      auto curve = converse_curve(pipe, t2, t2.gamma1 == 0.0, taus);
      rep.body["converse_curve_violations"] = curve.violations;
      violations += curve.violations;
      write_file(out_dir, "curve.csv", curve_csv(curve));
    }
  } else {
    if (theorem != 3 && theorem != 4)
      throw std::invalid_argument("quantum certification needs --theorem 3 or 4");
    const auto& inst = std::get<corpus::QuantumInstance>(in.instance);
    auto pipe = q_capacity_and_theorems(inst.channel, inst.lam, tolerance);
    QuantumChannelModel model(pipe.sol.channel);
    InfoFn info = [&](const Vec& p) { return model.info(p); };
    rep.body["capacity"] = capacity_block(pipe.sol.geo);

    if (theorem == 3) {
      rep.body["theorem_3"] = theorem1_block(pipe.t1);
      auto batch =
          sharded_samples(pipe.sol.geo, pipe.dlp, pipe.t1.delta, samples, seed, jobs);
      auto cert = certify_theorem1(info, pipe.sol.geo.capacity, pipe.t1, batch);
      rep.body["certificate"] = certificate_block(cert);
      violations = cert.violations;
      write_file(out_dir, "samples.csv",
                 samples_csv(batch, info, pipe.sol.geo.capacity, [&](double d) {
                   return pipe.sol.geo.capacity - pipe.t1.gamma * d * d;
                 }));
    } else {
      rep.body["theorem_4"] = theorem2_block(pipe.t2);
      double delta = pipe.t2.delta ? *pipe.t2.delta : 1.0;
      auto batch = sharded_samples(pipe.sol.geo, pipe.dlp, delta, samples, seed, jobs);
      auto cert = certify_theorem2(info, pipe.sol.geo, pipe.t2, batch);
      rep.body["certificate"] = certificate_block(cert);
      violations = cert.violations;
      auto curve = converse_curve(info, pipe.sol.geo, pipe.sigma.trace(), pipe.t2,
                                  pipe.t2.gamma1 == 0.0, taus);
      rep.body["converse_curve_violations"] = curve.violations;
      violations += curve.violations;
      write_file(out_dir, "curve.csv", curve_csv(curve));
    }
  }
  rep.body["provenance"] = provenance_block({seed, tolerance, samples, jobs}, 0);
  std::cout << rep.to_json();
  return violations > 0 ? kViolations : kOk;
}

int cmd_corpus(bool quantum_only) {
  ordered_json listing = ordered_json::array();
  for (const auto& [name, desc] : corpus_listing()) {
    if (quantum_only && !corpus_is_quantum(name)) continue;
    listing.push_back({{"name", name}, {"description", desc}});
  }
  Report rep;
  rep.body["corpus"] = listing;
  std::cout << rep.to_json();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity geometry toolkit: capacity, decay constants, and "
               "certification for constrained channels"};
  app.require_subcommand(1);

  std::string file, corpus_name = "identity-n", out_dir = ".";
  double tolerance = 1e-10;
  int theorem = 1, jobs = 1;
  long samples = 10000;
  std::uint64_t seed = 7;
  CorpusParams cp;
  bool quantum_only = false;

  auto add_common = [&](CLI::App* sub, bool with_certify_opts) {
    sub->add_option("--file", file, "channel/constraint JSON file");
    sub->add_option("--corpus", corpus_name, "built-in channel name");
    sub->add_option("--tol", tolerance, "duality-gap tolerance");
    sub->add_option("--n", cp.zeta_n, "input count for identity-n / zeta");
    sub->add_option("--p", cp.p, "flip probability for bsc-p");
    sub->add_option("--trunc", cp.trunc, "output truncation for zeta");
    sub->add_option("--theta", cp.theta, "overlap angle for cq-pure-pair");
    sub->add_option("--max-index", cp.max_index, "letter cap for example-2");
    sub->add_option("--sides", cp.sides, "polygon sides for example-1");
    if (with_certify_opts) {
      sub->add_option("--theorem", theorem, "theorem number (1-4)");
      sub->add_option("--samples", samples, "neighborhood sample count");
      sub->add_option("--seed", seed, "sampling seed");
      sub->add_option("--jobs", jobs, "certifier shards");
      sub->add_option("--out", out_dir, "directory for CSV outputs");
    }
  };

  CLI::App* cap = app.add_subcommand("capacity", "capacity, center, optimizer set");
  add_common(cap, false);
  CLI::App* consts = app.add_subcommand("constants", "decay constants for a theorem");
  add_common(consts, true);
  CLI::App* cert = app.add_subcommand("certify", "sampled certification and curves");
  add_common(cert, true);
  CLI::App* corp = app.add_subcommand("corpus", "list built-in channels");
  corp->add_flag("--quantum", quantum_only, "only classical-quantum entries");

  CLI11_PARSE(app, argc, argv);

  // identity-n picks up --n as well.
  if (corpus_name == "identity-n") cp.n = cp.zeta_n >= 2 ? cp.zeta_n : 2;

  try {
    if (corp->parsed()) return cmd_corpus(quantum_only);
    Inputs in = load_inputs(file, corpus_name, cp);
    if (cap->parsed()) return cmd_capacity(in, tolerance);
    if (consts->parsed()) return cmd_constants(in, theorem, tolerance, cp);
    return cmd_certify(in, theorem, samples, seed, tolerance, jobs, out_dir, cp);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const solver_error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  }
}
