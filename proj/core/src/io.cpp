#include "qberry/io.hpp"

#include <cmath>

#include "qberry/error.hpp"

namespace qberry::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double real_from_json(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(std::string(what) + " must be finite");
  return x;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {real_from_json(j, "amplitude"), 0.0};
  if (!j.is_array() || j.size() != 2) bad("complex numbers are [re, im] pairs");
  return {real_from_json(j[0], "real part"), real_from_json(j[1], "imaginary part")};
}

Json state_to_json(const QutritState& psi) {
  Json amps = Json::array();
  for (const auto& z : psi.amps()) amps.push_back(complex_to_json(z));
  return {{"amps", amps}};
}

QutritState state_from_json(const Json& j) {
  const Json& a = field(j, "amps");
  if (!a.is_array() || a.size() != 3) bad("\"amps\" must hold three amplitudes");
  CVec3 v{};
  for (std::size_t k = 0; k < 3; ++k) v[k] = complex_from_json(a[k]);
  const double n = norm(v);
  if (!(n > 0.0)) bad("state amplitudes are all zero");
  // Already-normalized input is kept bit for bit.
  if (std::abs(n - 1.0) <= kNormTolerance) return QutritState(v);
  return QutritState::normalized(v);
}

Json operator_to_json(const Operator3& op) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < 3; ++c) row.push_back(complex_to_json(op.matrix()(r, c)));
    rows.push_back(row);
  }
  return {{"entries", rows}};
}

Operator3 operator_from_json(const Json& j) {
  const Json& rows = field(j, "entries");
  if (!rows.is_array() || rows.size() != 3) bad("\"entries\" must be a 3x3 array");
  CMat3 m;
  for (std::size_t r = 0; r < 3; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 3) bad("\"entries\" must be a 3x3 array");
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = complex_from_json(rows[r][c]);
  }
  return Operator3(m);
}

Json star_to_json(const Star& s) { return {{"theta", s.theta}, {"phi", s.phi}}; }

Star star_from_json(const Json& j) {
  const double theta = real_from_json(field(j, "theta"), "theta");
  const double phi = real_from_json(field(j, "phi"), "phi");
  if (theta < 0.0 || theta > kPi) bad("theta must lie in [0, pi]");
  // Through the unit vector so phi lands in [0, 2 pi) and is 0 at the poles.
  return Star::from_vector(Star{theta, phi}.unit_vector());
}

Json star_set_to_json(const StarSet& s) {
  return {{"stars", Json::array({star_to_json(s.stars()[0]), star_to_json(s.stars()[1])})}};
}

StarSet star_set_from_json(const Json& j) {
  const Json& s = field(j, "stars");
  if (!s.is_array() || s.size() != 2) bad("\"stars\" must hold two stars");
  return {star_from_json(s[0]), star_from_json(s[1])};
}

Json loop_to_json(const StateLoop& loop) {
  Json states = Json::array();
  for (const auto& psi : loop.states()) states.push_back(state_to_json(psi));
  return {{"states", states}};
}

StateLoop loop_from_json(const Json& j) {
  const Json& s = field(j, "states");
  if (!s.is_array()) bad("\"states\" must be an array");
  std::vector<QutritState> states;
  states.reserve(s.size());
  for (const auto& e : s) states.push_back(state_from_json(e));
  return StateLoop(std::move(states));
}

Json phase_report_to_json(const PhaseReport& r) {
  Json out{{"gamma", r.gamma},
           {"gamma0", r.gamma0},
           {"gammaC", r.gammaC},
           {"class", std::string(name(r.classification))}};
  out["quantized"] = r.quantized ? Json(*r.quantized) : Json(nullptr);
  return out;
}

PhaseReport phase_report_from_json(const Json& j) {
  PhaseReport r;
  r.gamma = real_from_json(field(j, "gamma"), "gamma");
  r.gamma0 = real_from_json(field(j, "gamma0"), "gamma0");
  r.gammaC = real_from_json(field(j, "gammaC"), "gammaC");
  const Json& c = field(j, "class");
  if (!c.is_string()) bad("\"class\" must be a string");
  if (c == name(LoopClass::Exchange))
    r.classification = LoopClass::Exchange;
  else if (c == name(LoopClass::IndividualLoops))
    r.classification = LoopClass::IndividualLoops;
  else
    bad("unknown loop class " + c.get<std::string>());
  const Json& q = field(j, "quantized");
  if (!q.is_null()) {
    const double v = real_from_json(q, "quantized");
    if (v != 0.0 && std::abs(v - kPi) > 1e-12) bad("\"quantized\" must be 0, pi or null");
    r.quantized = v;
  }
  return r;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace qberry::io
