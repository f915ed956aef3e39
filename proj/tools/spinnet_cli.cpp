// spinnet: command-line front end for the spin-network experiments.
//
// Exit codes: 0 ok, 1 I/O, 2 usage or parse error, 3 domain error.

#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinnet/core/error.hpp"
#include "spinnet/dynamics/dynamics.hpp"
#include "spinnet/eval/evaluate.hpp"
#include "spinnet/experiments/experiments.hpp"
#include "spinnet/netdsl/netdsl.hpp"

namespace {

using spinnet::EndRef;
using spinnet::ExactScalar;
using spinnet::SpinNetwork;
using Json = nlohmann::ordered_json;

enum class Format { Human, Json };
enum class Mode { Exact, Float };

struct RunConfig {
  Format format = Format::Human;
  Mode mode = Mode::Exact;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  unsigned jobs = 0;
};

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string number(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(x);
}

std::string compact(const ExactScalar& x) {
  return x.denominator() == 1 ? x.numerator().get_str() : x.str();
}

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream out;
    out << std::cin.rdbuf();
    return out.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoFailure("cannot read " + path);
  return out.str();
}

SpinNetwork load(const std::string& path) {
  const std::string text = read_source(path);
  spinnet::ParseResult r = spinnet::parse_network(text);
  if (!r.ok()) {
    for (const auto& e : r.errors) std::cerr << spinnet::format_error(e, path) << '\n';
    throw UsageFailure(std::to_string(r.errors.size()) + " error(s) in " + path);
  }
  return std::move(*r.network);
}

EndRef end_of(const SpinNetwork& net, const std::string& ref) {
  try {
    return spinnet::resolve_free_end(net, ref);
  } catch (const spinnet::Error& e) {
    throw UsageFailure(std::string("unknown end: ") + e.what());
  }
}

std::vector<EndRef> ends_of(const SpinNetwork& net, const std::vector<std::string>& refs) {
  std::vector<EndRef> out;
  for (const auto& r : refs) out.push_back(end_of(net, r));
  return out;
}

void emit(const RunConfig& cfg, const Json& record, const std::string& human) {
  if (cfg.format == Format::Json) {
    std::cout << record.dump() << '\n';
  } else {
    std::cout << human;
  }
}

Json scalar_json(const RunConfig& cfg, const ExactScalar& x) {
  if (cfg.mode == Mode::Exact) return x.str();
  return x.to_double();
}

std::string scalar_human(const RunConfig& cfg, const ExactScalar& x) {
  return cfg.mode == Mode::Exact ? compact(x) : number(x.to_double());
}

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

void cmd_eval(const RunConfig& cfg, const std::string& file) {
  const SpinNetwork net = load(file);
  const ExactScalar v = spinnet::evaluate_closed(net);
  Json j{{"command", "eval"}, {"file", file}, {"value", scalar_json(cfg, v)}};
  emit(cfg, j, (cfg.mode == Mode::Exact ? v.str() : number(v.to_double())) + "\n");
}

void cmd_join(const RunConfig& cfg, const std::string& file, const std::string& a, const std::string& b) {
  const SpinNetwork net = load(file);
  const auto dist = spinnet::join_free_ends(net, end_of(net, a), end_of(net, b));
  Json d = Json::object();
  for (const auto& [c, p] : dist.entries) d[std::to_string(c.value())] = scalar_json(cfg, p);
  Json j{{"command", "join"}, {"file", file}, {"a", a}, {"b", b}, {"distribution", d}};
  std::string human = "{";
  bool first = true;
  for (const auto& [c, p] : dist.entries) {
    human += std::string(first ? "" : ", ") + "\"" + std::to_string(c.value()) + "\": ";
    human += cfg.mode == Mode::Exact ? "\"" + p.str() + "\"" : number(p.to_double());
    first = false;
  }
  emit(cfg, j, human + "}\n");
}

void cmd_exchange(const RunConfig& cfg, const std::string& file, const std::string& a, const std::string& b) {
  const SpinNetwork net = load(file);
  const auto r = spinnet::exchange_experiment(net, end_of(net, a), end_of(net, b));
  Json j{{"command", "exchange"},
         {"file", file},
         {"a", a},
         {"b", b},
         {"p_up", scalar_json(cfg, r.p_up)},
         {"p_down", scalar_json(cfg, r.p_down)},
         {"theta", r.theta},
         {"theta_degrees", degrees(r.theta)}};
  emit(cfg, j,
       "p_up=" + scalar_human(cfg, r.p_up) + " p_down=" + scalar_human(cfg, r.p_down) + " theta=" + number(r.theta) +
           " (" + number(degrees(r.theta)) + " deg)\n");
}

spinnet::AngleMatrix angles_for(const RunConfig& cfg, const SpinNetwork& net, const std::vector<std::string>& refs) {
  spinnet::AngleOptions options;
  options.jobs = cfg.jobs;
  return spinnet::angle_matrix(net, ends_of(net, refs), spinnet::default_cache(), options);
}

void cmd_angles(const RunConfig& cfg, const std::string& file, const std::vector<std::string>& refs) {
  const SpinNetwork net = load(file);
  const auto am = angles_for(cfg, net, refs);
  Json rows = Json::array();
  std::ostringstream human;
  human << "end";
  for (const auto& r : refs) human << '\t' << r;
  human << '\n';
  for (Eigen::Index i = 0; i < am.angles.rows(); ++i) {
    Json row = Json::array();
    human << refs[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < am.angles.cols(); ++k) {
      row.push_back(am.angles(i, k));
      human << '\t' << number(degrees(am.angles(i, k)));
    }
    rows.push_back(row);
    human << '\n';
  }
  Json j{{"command", "angles"}, {"file", file}, {"ends", refs}, {"angles", rows}};
  emit(cfg, j, "angles in degrees\n" + human.str());
}

void cmd_geometry(const RunConfig& cfg, const std::string& file, const std::vector<std::string>& refs) {
  const SpinNetwork net = load(file);
  const auto g = spinnet::geometry_consistency(angles_for(cfg, net, refs), cfg.tol);
  Json eig = Json::array();
  for (Eigen::Index i = 0; i < g.eigenvalues.size(); ++i) eig.push_back(g.eigenvalues(i));
  Json emb = Json::array();
  for (const auto& v : g.embedding) emb.push_back(Json::array({v.x(), v.y(), v.z()}));
  Json j{{"command", "geometry"}, {"file", file},   {"ends", refs},       {"embeddable", g.embeddable},
         {"residual", g.gram_residual}, {"rank", g.rank}, {"eigenvalues", eig}, {"embedding", emb}};
  std::ostringstream human;
  human << "embeddable=" << (g.embeddable ? "true" : "false") << " residual=" << number(g.gram_residual)
        << " rank=" << g.rank << '\n';
  for (std::size_t i = 0; i < g.embedding.size(); ++i) {
    const auto& v = g.embedding[i];
    human << refs[i] << '\t' << number(v.x()) << '\t' << number(v.y()) << '\t' << number(v.z()) << '\n';
  }
  emit(cfg, j, human.str());
}

void cmd_stability(const RunConfig& cfg, const std::string& file, const std::string& a, const std::string& b,
                   int reps) {
  const SpinNetwork net = load(file);
  const auto r = spinnet::stability_measure(net, end_of(net, a), end_of(net, b), reps, cfg.seed);
  Json j{{"command", "stability"}, {"file", file},          {"a", a},
         {"b", b},                 {"reps", reps},          {"seed", cfg.seed},
         {"initial_angle", r.initial_angle}, {"angles", r.angles}, {"outcomes", r.outcomes},
         {"max_drift", r.max_drift}};
  std::ostringstream human;
  human << "rep\toutcome\ttheta\n0\t-\t" << number(r.initial_angle) << '\n';
  for (std::size_t k = 0; k < r.angles.size(); ++k) {
    human << k + 1 << '\t' << r.outcomes[k] << '\t' << number(r.angles[k]) << '\n';
  }
  human << "max_drift=" << number(r.max_drift) << '\n';
  emit(cfg, j, human.str());
}

Eigen::MatrixXcd named_target(const std::string& name) {
  using C = std::complex<double>;
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m;
  if (name == "I") {
    m = Eigen::MatrixXcd::Identity(2, 2);
  } else if (name == "X") {
    m.resize(2, 2);
    m << 0, 1, 1, 0;
  } else if (name == "Y") {
    m.resize(2, 2);
    m << 0, C(0, -1), C(0, 1), 0;
  } else if (name == "Z") {
    m.resize(2, 2);
    m << 1, 0, 0, -1;
  } else if (name == "H") {
    m.resize(2, 2);
    m << h, h, h, -h;
  } else if (name == "S") {
    m.resize(2, 2);
    m << 1, 0, 0, C(0, 1);
  } else if (name == "T") {
    m.resize(2, 2);
    m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
  } else if (name == "SWAP") {
    m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  } else if (name == "CZ") {
    m = Eigen::MatrixXcd::Identity(4, 4);
    m(3, 3) = -1.0;
  } else if (name == "CNOT") {
    m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  } else {
    throw UsageFailure("unknown target '" + name + "'");
  }
  return m;
}

spinnet::StateVector ancilla_state(const std::string& kind, int ancillas) {
  if (kind == "singlets") return spinnet::default_ancilla_state(ancillas);
  if (kind == "up") return spinnet::basis_state(ancillas, 0);
  if (kind == "plus") {
    if (ancillas < 1) throw UsageFailure("'plus' needs at least one ancilla");
    spinnet::StateVector s = spinnet::basis_state(ancillas, 0);
    s.amplitudes(static_cast<Eigen::Index>(std::size_t{1} << (ancillas - 1))) = 1.0;
    s.amplitudes.normalize();
    return s;
  }
  throw UsageFailure("unknown ancilla state '" + kind + "'");
}

void cmd_dynamics(const RunConfig& cfg, const std::string& target, int ancillas, int max_len,
                  const std::string& state, std::size_t node_limit) {
  const Eigen::MatrixXcd u = named_target(target);
  if (ancillas < 0) throw UsageFailure("--ancillas must be non-negative");
  spinnet::SearchOptions options;
  options.max_len = max_len;
  options.node_limit = node_limit;
  options.jobs = cfg.jobs;
  const auto r = spinnet::approximate_unitary_search(u, ancillas, ancilla_state(state, ancillas), options);
  Json steps = Json::array();
  for (const auto& s : r.best_sequence.steps) {
    steps.push_back(std::string(s.channel == spinnet::PairChannel::Singlet ? "S" : "T") + "(" + std::to_string(s.i) +
                    "," + std::to_string(s.j) + ")");
  }
  Json j{{"command", "dynamics"}, {"target", target},     {"ancillas", ancillas},
         {"ancilla_state", state}, {"max_len", max_len},  {"sequence", steps},
         {"fidelity", r.fidelity}, {"success_probability", r.success_probability}, {"nodes", r.nodes}};
  emit(cfg, j,
       "sequence=" + spinnet::to_string(r.best_sequence) + " fidelity=" + number(r.fidelity) +
           " success_probability=" + number(r.success_probability) + " nodes=" + std::to_string(r.nodes) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spin-network evaluation and measurement experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  const std::map<std::string, Format> formats{{"human", Format::Human}, {"json", Format::Json},
                                              {"json-lines", Format::Json}};
  const std::map<std::string, Mode> modes{{"exact", Mode::Exact}, {"float", Mode::Float}};
  app.add_option("--format", cfg.format, "human or json (one json record per line)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--mode", cfg.mode, "exact (p/q) or float")->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--tol", cfg.tol, "geometry tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for sampled outcomes");
  app.add_option("--jobs", cfg.jobs, "worker threads, 0 for one per core");

  std::string file;
  std::string a;
  std::string b;
  std::vector<std::string> ends;
  int reps = 10;
  std::string target = "X";
  int ancillas = 2;
  int max_len = 4;
  std::string state = "singlets";
  std::size_t node_limit = 5'000'000;

  auto* eval = app.add_subcommand("eval", "value of a closed network");
  eval->add_option("file", file, ".snet file, - for stdin")->required();

  auto* join = app.add_subcommand("join", "outcome distribution of joining two free ends");
  join->add_option("file", file)->required();
  join->add_option("a", a, "free end: edge id or id:side")->required();
  join->add_option("b", b)->required();

  auto* exchange = app.add_subcommand("exchange", "split a unit off end a and join it to end b");
  exchange->add_option("file", file)->required();
  exchange->add_option("a", a)->required();
  exchange->add_option("b", b)->required();

  auto* angles = app.add_subcommand("angles", "pairwise exchange angles");
  angles->add_option("file", file)->required();
  angles->add_option("ends", ends)->required()->expected(2, -1);

  auto* geometry = app.add_subcommand("geometry", "test the angles for a 3d embedding");
  geometry->add_option("file", file)->required();
  geometry->add_option("ends", ends)->required()->expected(2, -1);

  auto* stability = app.add_subcommand("stability", "repeated exchange with committed outcomes");
  stability->add_option("file", file)->required();
  stability->add_option("a", a)->required();
  stability->add_option("b", b)->required();
  stability->add_option("--reps", reps, "repetitions")->check(CLI::NonNegativeNumber);

  auto* dynamics = app.add_subcommand("dynamics", "search singlet/triplet postselection sequences");
  dynamics->add_option("--target", target, "I X Y Z H S T SWAP CZ CNOT");
  dynamics->add_option("--ancillas", ancillas)->check(CLI::NonNegativeNumber);
  dynamics->add_option("--max-len", max_len)->check(CLI::NonNegativeNumber);
  dynamics->add_option("--ancilla-state", state, "singlets, up or plus");
  dynamics->add_option("--node-limit", node_limit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) cmd_eval(cfg, file);
    else if (*join) cmd_join(cfg, file, a, b);
    else if (*exchange) cmd_exchange(cfg, file, a, b);
    else if (*angles) cmd_angles(cfg, file, ends);
    else if (*geometry) cmd_geometry(cfg, file, ends);
    else if (*stability) cmd_stability(cfg, file, a, b, reps);
    else if (*dynamics) cmd_dynamics(cfg, target, ancillas, max_len, state, node_limit);
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const spinnet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  std::cout.flush();
  return std::cout ? 0 : 1;
}
