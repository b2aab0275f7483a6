#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "qberry/berry.hpp"
#include "qberry/dynamics.hpp"
#include "qberry/error.hpp"
#include "qberry/io.hpp"
#include "qberry/majorana.hpp"
#include "qberry/operators.hpp"
#include "qberry/verification.hpp"
#include "qberry/version.hpp"

namespace qberry::cli {

namespace {

using Json = io::Json;
namespace fs = std::filesystem;

constexpr std::size_t kFallbackSamples = 400;

// Raised for a failed physics assertion after the document has been written.
struct PhysicsAssertion {
  std::string what;
};

std::size_t default_samples() {
  if (const char* env = std::getenv("QBERRY_DEFAULT_SAMPLES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v >= 3) return static_cast<std::size_t>(v);
  }
  return kFallbackSamples;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::StarCollision:
    case ErrorCode::InconsistentPhases:
    case ErrorCode::StepTooCoarse:
    case ErrorCode::NotClosed:
    case ErrorCode::GapClosure:
    case ErrorCode::NonCyclic:
      return kNumericalInconsistency;
    default:
      return kInputError;
  }
}

std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string command;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  // Effective configuration; hashed into the metadata block.
  std::map<std::string, std::string> config;

  std::string config_hash() const {
    std::string canon = command;
    for (const auto& [k, v] : config) canon += "\n" + k + "=" + v;
    return fnv1a_hex(canon);
  }

  Json meta() const {
    return {{"tool", "qberry"}, {"version", kVersion}, {"command", command}, {"seed", seed},
            {"config_hash", config_hash()}};
  }

  std::string csv_header() const {
    return "# qberry " + std::string(kVersion) + " command=" + command + " seed=" + std::to_string(seed) +
           " config_hash=" + config_hash() + "\n";
  }

  bool csv() const { return format == "csv"; }

  void write(const std::string& text) const {
    if (output.empty()) {
      out << text;
      return;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + output);
    f << text;
  }

  void emit(Json doc) const {
    if (csv()) throw Error(ErrorCode::InvalidInput, "internal: csv document expected");
    Json full{{"meta", meta()}};
    for (auto& [k, v] : doc.items()) full[k] = std::move(v);
    write(full.dump(2) + "\n");
  }
};

// --input takes a path, "-" for stdin, or inline JSON starting with '{'.
Json read_input(const std::string& spec) {
  std::string text;
  if (!spec.empty() && spec.front() == '{') {
    text = spec;
  } else if (spec == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    text = s.str();
  } else {
    std::ifstream f(spec, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot read " + spec);
    std::ostringstream s;
    s << f.rdbuf();
    text = s.str();
  }
  return io::parse(text);
}

Json vec_json(const RVec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json star_angles(const StarSet& s) {
  const auto& st = s.stars();
  return Json::array({st[0].theta, st[0].phi, st[1].theta, st[1].phi});
}

RVec3 parse_triple(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + " must be three comma-separated numbers");
    }
  }
  if (v.size() != 3) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be three comma-separated numbers");
  return {v[0], v[1], v[2]};
}

// ---------------------------------------------------------------------------

struct StarsOptions {
  std::string input;
};

void cmd_stars(Context& ctx, const StarsOptions& o) {
  const Json in = read_input(o.input);
  const QutritState psi = io::state_from_json(in);
  ctx.config["input"] = in.dump();
  const StarSet s = stars_from_state(psi);
  const auto u = s.unit_vectors();
  const bool antipodal = are_antipodal(s, 1e-9), mirror = mirror_pair_check(s, 1e-9);
  const bool coincident = great_circle_distance(u[0], u[1]) <= 1e-6;
  if (ctx.csv()) {
    std::ostringstream csv;
    csv << ctx.csv_header() << "star,theta,phi,x,y,z\n";
    for (std::size_t k = 0; k < 2; ++k)
      csv << k + 1 << "," << format_double(s.stars()[k].theta) << "," << format_double(s.stars()[k].phi) << ","
          << format_double(u[k][0]) << "," << format_double(u[k][1]) << "," << format_double(u[k][2]) << "\n";
    csv << "# antipodal=" << antipodal << " mirror_pair=" << mirror << " coincident=" << coincident << "\n";
    ctx.write(csv.str());
    return;
  }
  Json doc = io::star_set_to_json(s);
  doc["unit_vectors"] = Json::array({vec_json(u[0]), vec_json(u[1])});
  doc["antipodal"] = antipodal;
  doc["mirror_pair"] = mirror;
  doc["coincident"] = coincident;
  doc["quadrupolar"] = is_quadrupolar(psi);
  ctx.emit(std::move(doc));
}

// ---------------------------------------------------------------------------

struct LoopOptions {
  std::string kind = "exchange";
  std::string input;
};

StateLoop build_loop(const LoopOptions& o, std::size_t n, Context& ctx) {
  if (o.kind == "exchange") return exchange_loop(n);
  if (o.kind == "individual") return individual_loop(n);
  if (o.kind == "geodesic") {
    QutritState a({1.0, 0.0, 0.0});
    QutritState b = QutritState::normalized({1.0, 1.0, 0.0});
    if (!o.input.empty()) {
      const Json in = read_input(o.input);
      if (!in.contains("a") || !in.contains("b"))
        throw Error(ErrorCode::InvalidInput, "geodesic input needs states \"a\" and \"b\"");
      a = io::state_from_json(in["a"]);
      b = io::state_from_json(in["b"]);
      ctx.config["input"] = in.dump();
    }
    return geodesic_loop(a, b, n);
  }
  if (o.kind == "file") {
    if (o.input.empty()) throw Error(ErrorCode::InvalidInput, "--kind file needs --input");
    const Json in = read_input(o.input);
    ctx.config["input"] = in.dump();
    return io::loop_from_json(in);
  }
  throw Error(ErrorCode::InvalidInput, "unknown loop kind " + o.kind);
}

void cmd_loop_phase(Context& ctx, const LoopOptions& o) {
  ctx.config["kind"] = o.kind;
  const StateLoop loop = build_loop(o, ctx.samples, ctx);
  const Complex b = bargmann_invariant(loop.states());
  const double discrete = discrete_geometric_phase(loop);

  // Loops too coarse for star tracking (e.g. the three-state geodesic) still
  // get the Bargmann route.
  std::optional<PhaseReport> rep;
  std::string skipped;
  if (loop.max_ray_step() <= kMaxRayStep)
    rep = classify_and_verify(loop);
  else
    skipped = "neighbour step " + format_double(loop.max_ray_step()) + " exceeds " + format_double(kMaxRayStep) +
              "; star route needs a finer loop";

  if (ctx.csv()) {
    std::ostringstream csv;
    csv << ctx.csv_header() << "key,value\n";
    csv << "samples," << loop.size() << "\n";
    csv << "bargmann_re," << format_double(b.real()) << "\nbargmann_im," << format_double(b.imag()) << "\n";
    csv << "discrete," << format_double(discrete) << "\n";
    if (rep) {
      csv << "gamma," << format_double(rep->gamma) << "\ngamma0," << format_double(rep->gamma0) << "\ngammaC,"
          << format_double(rep->gammaC) << "\nclass," << name(rep->classification) << "\nquantized,"
          << (rep->quantized ? format_double(*rep->quantized) : "") << "\n";
    }
    ctx.write(csv.str());
    return;
  }
  Json doc{{"samples", loop.size()}, {"bargmann", io::complex_to_json(b)}, {"discrete", discrete}};
  if (rep) {
    doc["star_route"] = wrap_phase(rep->gamma0 + rep->gammaC);
    doc["report"] = io::phase_report_to_json(*rep);
  } else {
    doc["star_route"] = nullptr;
    doc["report"] = nullptr;
    doc["star_route_skipped"] = skipped;
  }
  ctx.emit(std::move(doc));
}

// ---------------------------------------------------------------------------

struct SpectrumOptions {
  std::string input;
  std::optional<double> theta;
};

void cmd_spectrum(Context& ctx, const SpectrumOptions& o) {
  Operator3 h;
  if (!o.input.empty()) {
    const Json in = read_input(o.input);
    ctx.config["input"] = in.dump();
    h = io::operator_from_json(in);
  } else if (o.theta) {
    ctx.config["theta"] = format_double(*o.theta);
    h = planar_quadrupole_hamiltonian(*o.theta);
  } else {
    throw Error(ErrorCode::InvalidInput, "spectrum needs --input or --theta");
  }
  if (!h.hermitian()) throw Error(ErrorCode::NotHermitian, "operator is not Hermitian");
  const EigenSystem es = quadrupolar_eigenbasis(h);

  std::array<StarSet, 3> stars{StarSet({}, {}), StarSet({}, {}), StarSet({}, {})};
  std::array<std::optional<RVec3>, 3> axes;
  for (std::size_t k = 0; k < 3; ++k) {
    stars[k] = stars_from_state(QutritState::normalized(es.vectors[k]));
    if (are_antipodal(stars[k], 1e-9)) axes[k] = stars[k].unit_vectors()[0];
  }

  if (ctx.csv()) {
    std::ostringstream csv;
    csv << ctx.csv_header() << "index,eigenvalue,theta1,phi1,theta2,phi2\n";
    for (std::size_t k = 0; k < 3; ++k) {
      csv << k << "," << format_double(es.values[k]);
      for (const auto& x : star_angles(stars[k])) csv << "," << format_double(x.get<double>());
      csv << "\n";
    }
    ctx.write(csv.str());
    return;
  }
  Json values = Json::array(), states = Json::array(), star_json = Json::array(), axis_json = Json::array();
  for (std::size_t k = 0; k < 3; ++k) {
    values.push_back(es.values[k]);
    states.push_back(io::state_to_json(QutritState::normalized(es.vectors[k])));
    star_json.push_back(io::star_set_to_json(stars[k]));
    axis_json.push_back(axes[k] ? vec_json(*axes[k]) : Json(nullptr));
  }
  // Angles between the lines through antipodal star pairs.
  Json angles = Json::array();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Json a{{"pair", Json::array({i, j})}};
      a["angle"] = axes[i] && axes[j] ? Json(std::acos(std::min(1.0, std::abs(dot(*axes[i], *axes[j]))))) : Json(nullptr);
      angles.push_back(a);
    }
  ctx.emit({{"hermitian", true},
            {"eigenvalues", values},
            {"eigenstates", states},
            {"stars", star_json},
            {"axes", axis_json},
            {"axis_angles", angles}});
}

// ---------------------------------------------------------------------------

struct EvolveOptions {
  std::string field;
  std::string hamiltonian;
  std::string quadrupole;
  std::string input;
  std::string real;
  double periods = 1.0;
  bool require_quadrupolar = false;
};

void cmd_evolve(Context& ctx, const EvolveOptions& o) {
  const int sources = !o.field.empty() + !o.hamiltonian.empty() + !o.quadrupole.empty();
  if (sources != 1) throw Error(ErrorCode::InvalidInput, "give exactly one of --field, --hamiltonian, --quadrupole");
  if (o.input.empty() == o.real.empty()) throw Error(ErrorCode::InvalidInput, "give exactly one of --input, --real");
  if (!(o.periods > 0.0) || !std::isfinite(o.periods)) throw Error(ErrorCode::InvalidInput, "--periods must be positive");
  ctx.config["periods"] = format_double(o.periods);
  ctx.config["require_quadrupolar"] = o.require_quadrupolar ? "1" : "0";

  std::optional<SpinFieldReal> field;
  Operator3 h;
  if (!o.field.empty()) {
    const RVec3 f = parse_triple(o.field, "--field");
    field.emplace(f[0], f[1], f[2]);
    h = quadrupolar_basis_hamiltonian(*field);
    ctx.config["field"] = format_double(f[0]) + "," + format_double(f[1]) + "," + format_double(f[2]);
  } else if (!o.quadrupole.empty()) {
    const auto c = parse_quadrupole_component(o.quadrupole);
    if (!c) throw Error(ErrorCode::InvalidInput, "unknown quadrupole component " + o.quadrupole);
    h = quadrupole_op(*c);
    ctx.config["quadrupole"] = o.quadrupole;
  } else {
    const Json in = read_input(o.hamiltonian);
    ctx.config["hamiltonian"] = in.dump();
    h = io::operator_from_json(in);
    if (!h.hermitian()) throw Error(ErrorCode::NotHermitian, "Hamiltonian is not Hermitian");
  }

  // Real-basis input is mapped to the S_z basis with U^dagger.
  const bool real_basis = !o.real.empty();
  std::optional<RealState3> real0;
  QutritState psi0({1.0, 0.0, 0.0});
  if (real_basis) {
    const RVec3 r = parse_triple(o.real, "--real");
    real0 = RealState3::normalized(r[0], r[1], r[2]);
    psi0 = apply(global_unitary().matrix().adjoint(), QutritState(real0->amps()));
    ctx.config["real"] = o.real;
  } else {
    const Json in = read_input(o.input);
    ctx.config["input"] = in.dump();
    psi0 = io::state_from_json(in);
  }

  double horizon = 0.0;
  if (field) {
    horizon = o.periods * field->period();
  } else {
    const auto v = eig_hermitian3(h.matrix()).values;
    const double w = std::max(std::abs(v[0]), std::abs(v[2]));
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidInput, "Hamiltonian is zero");
    horizon = o.periods * 2.0 * kPi / w;
  }

  const std::size_t steps = ctx.samples;
  double max_residual = 0.0;
  std::ostringstream csv;
  Json traj = Json::array();
  if (ctx.csv()) {
    csv << ctx.csv_header();
    csv << (real_basis && field ? "t,r,s,t_component" : "t,re0,im0,re1,im1,re2,im2")
        << ",residual,theta1,phi1,theta2,phi2\n";
  }
  for (std::size_t j = 0; j <= steps; ++j) {
    const double t = horizon * static_cast<double>(j) / static_cast<double>(steps);
    const QutritState psi = apply(propagator(h.matrix(), t), psi0);
    const double residual = norm(spin_expectation(psi));
    max_residual = std::max(max_residual, residual);
    const Json stars = star_angles(stars_from_state(psi));
    std::optional<RealState3> rs;
    if (real_basis && field) rs = evolve_closed_form(*field, *real0, t);
    if (ctx.csv()) {
      csv << format_double(t);
      if (rs) {
        for (double x : rs->vec()) csv << "," << format_double(x);
      } else {
        for (const auto& z : psi.amps()) csv << "," << format_double(z.real()) << "," << format_double(z.imag());
      }
      csv << "," << format_double(residual);
      for (const auto& x : stars) csv << "," << format_double(x.get<double>());
      csv << "\n";
    } else {
      Json s{{"t", t}, {"amps", io::state_to_json(psi)["amps"]}, {"residual", residual}, {"stars", stars}};
      if (rs) s["real"] = vec_json(rs->vec());
      traj.push_back(std::move(s));
    }
  }

  Json summary{{"max_residual", max_residual}, {"horizon", horizon}};
  if (field && is_quadrupolar(psi0)) {
    const AAPhase aa = aa_phase(*field, psi0, std::max<std::size_t>(steps, 3));
    summary["aa_phase"] = aa.geometric;
    summary["cyclic_time"] = aa.period;
    summary["total_phase"] = aa.total;
    summary["dynamical_phase"] = aa.dynamical;
    summary["quantized"] = aa.quantized ? Json(*aa.quantized) : Json(nullptr);
  } else {
    summary["aa_phase"] = nullptr;
  }

  if (ctx.csv()) {
    csv << "# max_residual=" << format_double(max_residual);
    if (!summary["aa_phase"].is_null()) csv << " aa_phase=" << format_double(summary["aa_phase"].get<double>());
    csv << "\n";
    ctx.write(csv.str());
  } else {
    ctx.emit({{"hamiltonian", io::operator_to_json(h)}, {"psi0", io::state_to_json(psi0)}, {"summary", summary},
              {"trajectory", traj}});
  }
  if (o.require_quadrupolar && max_residual > 1e-8)
    throw PhysicsAssertion{"state leaves the quadrupolar subspace: max |<S>| = " + format_double(max_residual)};
}

// ---------------------------------------------------------------------------

struct MorphOptions {
  std::vector<double> alphas{0.0, 0.2, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0};
};

struct MorphResult {
  double alpha = 0.0;
  PhaseReport report;
  StarTrajectory traj;
};

MorphResult morph_one(double alpha, std::size_t n) {
  const StateLoop loop = morph_eigenstate_loop(alpha, n);
  return {alpha, classify_and_verify(loop), track_stars(loop)};
}

Json morph_json(const MorphResult& r) {
  Json s1 = Json::array(), s2 = Json::array(), orig = Json::array();
  for (std::size_t k = 0; k < r.traj.sets.size(); ++k) {
    const auto& st = r.traj.sets[k].stars();
    s1.push_back(Json::array({st[0].theta, st[0].phi}));
    s2.push_back(Json::array({st[1].theta, st[1].phi}));
    orig.push_back(static_cast<bool>(r.traj.original[k]));
  }
  return {{"alpha", r.alpha},
          {"class", std::string(name(r.report.classification))},
          {"report", io::phase_report_to_json(r.report)},
          {"trajectory", {{"star1", s1}, {"star2", s2}, {"original", orig}}}};
}

std::string morph_csv(const MorphResult& r) {
  std::ostringstream csv;
  for (std::size_t k = 0; k < r.traj.sets.size(); ++k) {
    const auto& st = r.traj.sets[k].stars();
    csv << format_double(r.alpha) << "," << k << "," << static_cast<int>(r.traj.original[k]) << ","
        << format_double(st[0].theta) << "," << format_double(st[0].phi) << "," << format_double(st[1].theta) << ","
        << format_double(st[1].phi) << "\n";
  }
  return csv.str();
}

void cmd_morph(Context& ctx, MorphOptions o) {
  for (double a : o.alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::InvalidInput, "alpha must lie in [0, 1]");
  std::sort(o.alphas.begin(), o.alphas.end());
  o.alphas.erase(std::unique(o.alphas.begin(), o.alphas.end()), o.alphas.end());
  std::string list;
  for (double a : o.alphas) list += (list.empty() ? "" : ",") + format_double(a);
  ctx.config["alpha"] = list;

  std::vector<std::future<MorphResult>> jobs;
  for (double a : o.alphas) jobs.push_back(std::async(std::launch::async, morph_one, a, ctx.samples));
  std::vector<MorphResult> results;
  for (auto& j : jobs) results.push_back(j.get());

  const std::string header = "alpha,sample,original,theta1,phi1,theta2,phi2\n";
  if (!ctx.output.empty() && fs::is_directory(ctx.output)) {
    // One trajectory file per alpha; the summary goes to stdout.
    const std::string dir = ctx.output;
    Json summary = Json::array();
    for (const auto& r : results) {
      const fs::path file = fs::path(dir) / ("morph_alpha_" + format_double(r.alpha) + (ctx.csv() ? ".csv" : ".json"));
      std::ofstream f(file, std::ios::binary);
      if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + file.string());
      if (ctx.csv()) {
        f << ctx.csv_header() << header << morph_csv(r);
      } else {
        Json doc{{"meta", ctx.meta()}};
        for (auto& [k, v] : morph_json(r).items()) doc[k] = v;
        f << doc.dump(2) << "\n";
      }
      summary.push_back({{"alpha", r.alpha},
                         {"class", std::string(name(r.report.classification))},
                         {"gamma", r.report.gamma},
                         {"file", file.filename().string()}});
    }
    Json doc{{"meta", ctx.meta()}, {"results", summary}};
    ctx.out << doc.dump(2) << "\n";
    return;
  }
  if (ctx.csv()) {
    std::string text = ctx.csv_header() + header;
    for (const auto& r : results) text += morph_csv(r);
    ctx.write(text);
    return;
  }
  Json arr = Json::array();
  for (const auto& r : results) arr.push_back(morph_json(r));
  ctx.emit({{"samples", ctx.samples}, {"results", arr}});
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::string suite = "all";
};

int cmd_verify(Context& ctx, const VerifyOptions& o) {
  if (suite_criteria(o.suite).empty()) throw Error(ErrorCode::InvalidInput, "unknown suite " + o.suite);
  ctx.config["suite"] = o.suite;
  const auto results = run_suite(o.suite, ctx.seed);
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
  if (ctx.csv()) {
    std::ostringstream csv;
    csv << ctx.csv_header() << "id,criterion,check,measured,tolerance,passed\n";
    for (const auto& r : results)
      for (const auto& c : r.checks)
        csv << r.id << "," << r.name << ",\"" << c.name << "\"," << format_double(c.measured) << ","
            << format_double(c.tolerance) << "," << (c.passed ? "true" : "false") << "\n";
    ctx.write(csv.str());
  } else {
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    ctx.emit({{"suite", o.suite}, {"passed", ok}, {"criteria", arr}});
  }
  for (const auto& r : results) ctx.err << summary_line(r) << "\n";
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-1 geometric phases: Majorana stars, Berry phases, spin dynamics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();

  Context ctx{out, err, "", "", "json", 0, default_samples(), {}};
  std::optional<std::size_t> samples;
  app.add_option("--output", ctx.output, "Output file (morph: may be a directory)");
  app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--samples", samples, "Loop or trajectory samples (default QBERRY_DEFAULT_SAMPLES or 400)")
      ->check(CLI::Range(std::size_t{3}, std::size_t{100000000}));
  app.add_option("--seed", ctx.seed, "Random seed");

  StarsOptions so;
  auto* stars = app.add_subcommand("stars", "Majorana stars of a state");
  stars->add_option("--input", so.input, "State JSON (path, '-' or inline)")->required();

  LoopOptions lo;
  auto* loop = app.add_subcommand("loop-phase", "Geometric phase of a closed loop by both routes");
  loop->add_option("--kind", lo.kind, "Loop kind")->check(CLI::IsMember({"exchange", "individual", "geodesic", "file"}));
  loop->add_option("--input", lo.input, "Loop JSON (kind file) or {\"a\", \"b\"} endpoints (kind geodesic)");

  SpectrumOptions spo;
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and eigenstate stars of a Hermitian operator");
  spectrum->add_option("--input", spo.input, "Operator JSON");
  spectrum->add_option("--theta", spo.theta, "Use cos(theta) Q_x2-y2 + sin(theta) Q_xy");

  EvolveOptions eo;
  auto* evolve = app.add_subcommand("evolve", "Trajectory under a spin field or a fixed Hamiltonian");
  evolve->add_option("--field", eo.field, "Field a,b,c of H' = -a S'x + b S'y + c S'z");
  evolve->add_option("--hamiltonian", eo.hamiltonian, "Hamiltonian operator JSON");
  evolve->add_option("--quadrupole", eo.quadrupole, "Single quadrupole component: xy, yz, zx, zz, x2-y2");
  evolve->add_option("--input", eo.input, "Initial state JSON (S_z basis)");
  evolve->add_option("--real", eo.real, "Initial real-basis state r,s,t");
  evolve->add_option("--periods", eo.periods, "Duration in periods");
  evolve->add_flag("--require-quadrupolar", eo.require_quadrupolar, "Exit 4 if the state leaves the quadrupolar subspace");

  MorphOptions mo;
  auto* morph = app.add_subcommand("morph", "Star trajectories of the interpolated eigenstate loops");
  morph->add_option("--alpha", mo.alphas, "Interpolation parameters in [0, 1]")->delimiter(',');

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--suite", vo.suite, "all, bargmann, algebra, geometry, quantization, dynamics, morph, c1..c12");

  std::vector<const char*> argv{"qberry"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (samples) ctx.samples = *samples;
  ctx.config["format"] = ctx.format;
  ctx.config["samples"] = std::to_string(ctx.samples);
  ctx.config["seed"] = std::to_string(ctx.seed);
  try {
    if (stars->parsed()) {
      ctx.command = "stars";
      cmd_stars(ctx, so);
    } else if (loop->parsed()) {
      ctx.command = "loop-phase";
      cmd_loop_phase(ctx, lo);
    } else if (spectrum->parsed()) {
      ctx.command = "spectrum";
      cmd_spectrum(ctx, spo);
    } else if (evolve->parsed()) {
      ctx.command = "evolve";
      cmd_evolve(ctx, eo);
    } else if (morph->parsed()) {
      ctx.command = "morph";
      cmd_morph(ctx, mo);
    } else if (verify->parsed()) {
      ctx.command = "verify";
      return cmd_verify(ctx, vo);
    }
  } catch (const PhysicsAssertion& e) {
    err << "qberry: " << e.what << "\n";
    return kPhysicsAssertion;
  } catch (const Error& e) {
    err << "qberry: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const Json::exception& e) {
    err << "qberry: malformed input: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace qberry::cli
