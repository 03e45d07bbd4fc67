#include "wittlab/io.hpp"

#include <cctype>
#include <charconv>

#include "wittlab/errors.hpp"

namespace wittlab::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing JSON key \"") + key + "\"");
  return j.at(key);
}

long long need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) bad(std::string("JSON key \"") + key + "\" must be an integer");
  return v.get<long long>();
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string strip_spaces(std::string_view s) {
  std::string r;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) r += c;
  return r;
}

long long parse_integer(std::string_view s) {
  long long v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) bad("not an integer: \"" + std::string(s) + "\"");
  return v;
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON value: ") + e.what());
  }
}

}  // namespace

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth < 0) bad("unbalanced brackets in \"" + std::string(text) + "\"");
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) bad("unbalanced brackets in \"" + std::string(text) + "\"");
  out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------------------
// Fields and elements

json field_to_json(const FqContext& f) {
  json j{{"p", f.characteristic()}, {"q", f.order()}};
  if (f.degree() > 1) j["modulus"] = f.modulus();
  return j;
}

const FqContext& field_from_json(const json& j) {
  return guarded([&]() -> const FqContext& {
    if (j.contains("modulus")) {
      const auto p = static_cast<unsigned>(need_int(j, "p"));
      return FqContext::with_modulus(p, j.at("modulus").get<std::vector<unsigned>>());
    }
    const auto q = static_cast<unsigned>(need_int(j, "q"));
    const FqContext& f = FqContext::of_order(q);
    if (j.contains("p") && j.at("p").get<unsigned>() != f.characteristic())
      throw DomainError("p = " + j.at("p").dump() + " does not match q = " + std::to_string(q));
    return f;
  });
}

json to_json(const FqElem& a) { return a.coeffs(); }

FqElem fq_from_json(const FqContext& f, const json& j) {
  return guarded([&] {
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    if (!j.is_array()) bad("field element must be an integer or a coefficient array");
    auto c = j.get<std::vector<long long>>();
    if (c.size() > f.degree()) bad("field element has " + std::to_string(c.size()) + " coefficients, degree is " +
                                   std::to_string(f.degree()));
    std::vector<unsigned> cc;
    const long long p = f.characteristic();
    for (long long x : c) cc.push_back(static_cast<unsigned>(((x % p) + p) % p));
    cc.resize(f.degree(), 0);
    return f.from_coeffs(cc);
  });
}

json to_json(const LaurentPoly& a) {
  json coeffs = json::array();
  if (!a.is_zero())
    for (auto e = a.lowest_exponent(); e <= a.highest_exponent(); ++e) coeffs.push_back(to_json(a.coefficient(e)));
  return {{"lowest_exponent", a.is_zero() ? 0 : a.lowest_exponent()}, {"coefficients", coeffs}};
}

LaurentPoly laurent_from_json(const FqContext& f, const json& j) {
  return guarded([&] {
    const auto low = need_int(j, "lowest_exponent");
    const json& c = need(j, "coefficients");
    if (!c.is_array()) bad("Laurent coefficients must be an array");
    LaurentPoly r(f);
    std::int64_t e = low;
    for (const auto& x : c) r += LaurentPoly::monomial(fq_from_json(f, x), e++);
    return r;
  });
}

// ---------------------------------------------------------------------------
// Witt vectors

namespace {

json witt_header(const CoeffRing& ring, unsigned n) {
  json j = field_to_json(*ring.field);
  j["ring"] = ring.name();
  j["n"] = n;
  return j;
}

}  // namespace

json to_json(const WittFq& x) {
  json j = witt_header(x.ring(), x.level());
  json c = json::array();
  for (const auto& a : x.components()) c.push_back(to_json(a));
  j["components"] = c;
  return j;
}

json to_json(const WittLaurent& x) {
  json j = witt_header(x.ring(), x.level());
  json c = json::array();
  for (const auto& a : x.components()) c.push_back(to_json(a));
  j["components"] = c;
  return j;
}

WittFq witt_from_json(const json& j, const FqContext* field) {
  return guarded([&] {
    if (!field && !(j.contains("q") || j.contains("modulus"))) bad("Witt vector JSON needs \"q\"");
    const FqContext& f = (j.contains("q") || j.contains("modulus")) ? field_from_json(j) : *field;
    const json& c = need(j, "components");
    if (!c.is_array() || c.empty()) bad("Witt components must be a nonempty array");
    std::vector<FqElem> comps;
    for (const auto& a : c) comps.push_back(fq_from_json(f, a));
    if (j.contains("n") && j.at("n").get<std::size_t>() != comps.size())
      bad("Witt vector declares n = " + j.at("n").dump() + " but has " + std::to_string(comps.size()) + " components");
    return WittFq(CoeffRing::fq(f), std::move(comps));
  });
}

WittLaurent witt_laurent_from_json(const json& j, const FqContext* field) {
  return guarded([&] {
    if (!field && !(j.contains("q") || j.contains("modulus"))) bad("Witt vector JSON needs \"q\"");
    const FqContext& f = (j.contains("q") || j.contains("modulus")) ? field_from_json(j) : *field;
    const std::string ring = j.value("ring", std::string());
    const CoeffRing r = ring.find("1/t") != std::string::npos ? CoeffRing::laurent(f) : CoeffRing::poly(f);
    const json& c = need(j, "components");
    if (!c.is_array() || c.empty()) bad("Witt components must be a nonempty array");
    std::vector<LaurentPoly> comps;
    for (const auto& a : c) comps.push_back(laurent_from_json(f, a));
    return WittLaurent(r, std::move(comps));
  });
}

// ---------------------------------------------------------------------------
// omega

json to_json(const OmegaElement& x) {
  json j = field_to_json(x.field());
  j["precision"] = x.precision();
  json t = json::array();
  for (const auto& [i, a] : x.terms()) t.push_back({{"v", i}, {"coeff", to_json(a)}});
  j["terms"] = t;
  return j;
}

OmegaElement omega_from_json(const json& j, const FqContext* field) {
  return guarded([&] {
    if (!field && !(j.contains("q") || j.contains("modulus"))) {
      const json& t = need(j, "terms");
      if (t.empty() || !t[0].contains("coeff")) bad("omega JSON needs \"q\"");
      field = &field_from_json(t[0].at("coeff"));
    }
    const FqContext& f = (j.contains("q") || j.contains("modulus")) ? field_from_json(j) : *field;
    const auto m = static_cast<unsigned>(need_int(j, "precision"));
    std::map<unsigned, WittFq> terms;
    for (const auto& t : need(j, "terms")) {
      const auto v = static_cast<unsigned>(need_int(t, "v"));
      WittFq a = witt_from_json(need(t, "coeff"), &f);
      if (terms.count(v)) bad("repeated V-exponent " + std::to_string(v));
      terms.emplace(v, std::move(a));
    }
    return OmegaElement(f, m, std::move(terms));
  });
}

json to_json(const OmegaTrunc& x) {
  json j = field_to_json(x.field());
  j["level"] = x.level();
  json s = json::array();
  for (const auto& a : x.slots()) s.push_back(to_json(a));
  j["slots"] = s;
  return j;
}

OmegaTrunc omega_trunc_from_json(const json& j, const FqContext* field) {
  return guarded([&] {
    if (!field && !(j.contains("q") || j.contains("modulus"))) bad("omega_n JSON needs \"q\"");
    const FqContext& f = (j.contains("q") || j.contains("modulus")) ? field_from_json(j) : *field;
    std::vector<WittFq> slots;
    for (const auto& s : need(j, "slots")) slots.push_back(witt_from_json(s, &f));
    return OmegaTrunc(f, std::move(slots));
  });
}

// ---------------------------------------------------------------------------
// Modules

json to_json(const ChainMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (const auto& x : m.row_vector(i)) r.push_back(to_json(x));
    rows.push_back(r);
  }
  return rows;
}

ChainMatrix matrix_from_json(const json& rows, const FqContext& field, unsigned level, std::size_t cols) {
  return guarded([&] {
    if (!rows.is_array()) bad("matrix must be an array of rows");
    ChainMatrix m(field, level, 0, cols);
    for (const auto& r : rows) {
      if (!r.is_array() || r.size() != cols)
        bad("matrix row must have " + std::to_string(cols) + " entries");
      ChainVector v;
      for (const auto& x : r) {
        WittFq a = x.is_object() ? witt_from_json(x, &field)
                                 : WittFq::from_integer(CoeffRing::fq(field), level, BigInt(std::to_string(x.get<long long>())));
        if (a.level() != level)
          throw DomainError("matrix entry at level " + std::to_string(a.level()) + ", expected " + std::to_string(level));
        v.push_back(std::move(a));
      }
      m.append_row(v);
    }
    return m;
  });
}

json to_json(const FiniteChainModule& m) {
  json j = field_to_json(*m.field);
  j["level"] = m.level;
  j["generators"] = m.generators;
  j["relations"] = to_json(m.relations);
  return j;
}

FiniteChainModule module_from_json(const json& j, const FqContext* field) {
  return guarded([&] {
    if (!field && !(j.contains("q") || j.contains("modulus"))) bad("module JSON needs \"q\"");
    const FqContext& f = (j.contains("q") || j.contains("modulus")) ? field_from_json(j) : *field;
    const auto n = static_cast<unsigned>(need_int(j, "level"));
    const auto g = static_cast<std::size_t>(need_int(j, "generators"));
    const json rel = j.contains("relations") ? j.at("relations") : json::array();
    return FiniteChainModule(f, n, g, matrix_from_json(rel, f, n, g));
  });
}

json to_json(const SemilinearMap& f) { return {{"matrix", to_json(f.matrix)}, {"twist", f.twist}}; }

SemilinearMap semilinear_from_json(const json& j, const FqContext& field, unsigned level, std::size_t g) {
  return guarded([&] {
    SemilinearMap f;
    f.matrix = matrix_from_json(need(j, "matrix"), field, level, g);
    f.twist = j.value("twist", 0LL);
    return f;
  });
}

// ---------------------------------------------------------------------------
// W_Q, I and J

json to_json(const PAdicApprox& x) {
  if (x.is_zero()) {
    json j{{"zero", true}};
    j["absolute_precision"] = x.is_exact_zero() ? json(nullptr) : json(x.absolute_precision());
    return j;
  }
  return {{"v", x.valuation()}, {"mantissa", to_json(x.mantissa())}};
}

PAdicApprox padic_from_json(const json& j, const FqContext& field) {
  return guarded([&] {
    if (j.value("zero", false)) {
      const json& a = j.contains("absolute_precision") ? j.at("absolute_precision") : json(nullptr);
      return a.is_null() ? PAdicApprox::exact_zero(field) : PAdicApprox::zero_mod(field, a.get<std::int64_t>());
    }
    const auto v = need_int(j, "v");
    const WittFq u = witt_from_json(need(j, "mantissa"), &field);
    return PAdicApprox::from_witt(u, v);
  });
}

namespace {

template <class X>
json window_json(const X& x) {
  json j = field_to_json(*x.field);
  j["lo"] = x.lo;
  j["hi"] = x.hi;
  json s = json::array();
  for (const auto& [i, v] : x.slots) s.push_back({{"i", i}, {"value", to_json(v)}});
  j["slots"] = s;
  return j;
}

}  // namespace

json to_json(const ICheckElement& x) {
  json j = window_json(x);
  j["finite_tail"] = x.finite_tail;
  j["truncated"] = x.truncated;
  return j;
}

ICheckElement icheck_from_json(const json& j, const FqContext* field) {
  return guarded([&] {
    if (!field && !(j.contains("q") || j.contains("modulus"))) bad("I-element JSON needs \"q\"");
    const FqContext& f = (j.contains("q") || j.contains("modulus")) ? field_from_json(j) : *field;
    ICheckElement x(f, static_cast<int>(need_int(j, "lo")), static_cast<int>(need_int(j, "hi")),
                    j.value("finite_tail", true));
    for (const auto& s : need(j, "slots")) x.set(static_cast<int>(need_int(s, "i")), padic_from_json(need(s, "value"), f));
    return x;
  });
}

json to_json(const JElement& x) { return window_json(x); }

JElement j_from_json(const json& j, const FqContext* field) {
  return guarded([&] {
    if (!field && !(j.contains("q") || j.contains("modulus"))) bad("J-element JSON needs \"q\"");
    const FqContext& f = (j.contains("q") || j.contains("modulus")) ? field_from_json(j) : *field;
    JElement x(f, static_cast<int>(need_int(j, "lo")), static_cast<int>(need_int(j, "hi")));
    for (const auto& s : need(j, "slots")) x.set(static_cast<int>(need_int(s, "i")), padic_from_json(need(s, "value"), f));
    return x;
  });
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const ClmWitness& w) {
  json hist = json::array();
  for (const auto& h : w.history) hist.push_back({{"k", h.k}, {"s", h.s}});
  return {{"gamma", to_json(w.gamma)},
          {"delta", to_json(w.delta)},
          {"gamma_text", w.gamma.to_string()},
          {"delta_text", w.delta.to_string()},
          {"method", w.method},
          {"orientation", w.orientation},
          {"rescaling_history", hist},
          {"residual_window", {w.window_lo, w.window_hi}},
          {"residual", to_json(w.residual)},
          {"residual_zero", w.residual.is_zero()},
          {"exact", w.exact}};
}

json to_json(const BaerResult& r) {
  return {{"c", to_json(r.c)},
          {"residual", to_json(r.residual)},
          {"residual_window", {r.residual.lo, r.residual.hi}},
          {"residual_zero", r.residual.is_zero()},
          {"precision_floor", r.precision_floor}};
}

json to_json(const LiftPairResult& r) {
  return {{"a_lift", to_json(r.a_lift)},
          {"b_lift", to_json(r.b_lift)},
          {"adjusted", r.adjusted},
          {"residual", to_json(r.residual)},
          {"residual_window", {r.residual.lo, r.residual.hi}},
          {"residual_zero", r.residual_zero},
          {"quotients_match", r.quotients_match}};
}

json to_json(const TorsionComparison& r) {
  return {{"p_torsion", r.p_torsion}, {"v_torsion", r.v_torsion}, {"coincide", r.coincide}};
}

json to_json(const TruncTensorResult& r) {
  return {{"tor0", to_json(r.tor0)}, {"tor0_invariants", r.tor0_invariants}, {"tor1_invariants", r.tor1_invariants}};
}

json to_json(const HomEnumeration& h) {
  return {{"candidates", h.candidates},
          {"homs", h.maps.size()},
          {"decomposition_count", h.decomposition_count},
          {"matches_pairings", h.matches_pairings}};
}

json to_json(const TransitionReport& r) {
  return {{"level", r.level},
          {"duals_checked", r.duals_checked},
          {"taus_checked", r.taus_checked},
          {"pi_is_slotwise_restriction", r.pi_is_slotwise_restriction},
          {"unique_factorization", r.unique_factorization},
          {"surjective", r.surjective},
          {"counterexamples", r.counterexamples},
          {"ok", r.ok()}};
}

json to_json(const CohomologyResult& r) {
  return {{"d", r.d},
          {"n", r.n},
          {"p", r.complex.field ? r.complex.field->characteristic() : 0},
          {"q", r.q},
          {"h0", r.h0},
          {"h1", r.h1},
          {"log_q_h0", r.log_h0()},
          {"log_q_h1", r.log_h1()},
          {"window", r.window},
          {"windows_tried", r.windows_tried},
          {"stabilized", r.stabilized}};
}

json to_json(const TanakaReport& r) {
  json lv = json::array();
  for (const auto& l : r.levels)
    lv.push_back({{"n", l.n},
                  {"h0", l.h0},
                  {"h1", l.h1},
                  {"h1_twisted", l.h1_twisted},
                  {"ker_p", l.ker_p},
                  {"ker_v", l.ker_v},
                  {"kernels_coincide", l.kernels_coincide}});
  return {{"s", r.s}, {"q", r.q}, {"h0_vanishes", r.h0_vanishes}, {"levels", lv}};
}

// ---------------------------------------------------------------------------
// Literals

FqElem parse_fq(const FqContext& f, std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) bad("empty field element");
  if (s.front() == '[') return fq_from_json(f, parse_json_text(s));
  return f.from_int(parse_integer(s));
}

LaurentPoly parse_laurent(const FqContext& f, std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) bad("empty polynomial");
  if (s.front() == '{') return laurent_from_json(f, parse_json_text(s));
  // Split into signed terms at depth-0 '+' and '-' not following '^'.
  std::vector<std::pair<bool, std::string>> terms;
  int depth = 0;
  std::string cur;
  bool neg = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    const bool sep = depth == 0 && (c == '+' || c == '-') && i > 0 && s[i - 1] != '^' && s[i - 1] != '*';
    if (sep) {
      terms.emplace_back(neg, cur);
      cur.clear();
      neg = c == '-';
    } else if (i == 0 && c == '-') {
      neg = true;
    } else {
      cur += c;
    }
  }
  terms.emplace_back(neg, cur);
  LaurentPoly r(f);
  for (const auto& [negative, t] : terms) {
    if (t.empty()) bad("empty term in \"" + s + "\"");
    FqElem c = f.one();
    std::string mono = t;
    const auto star = t.rfind('*');
    if (star != std::string::npos) {
      c = parse_fq(f, t.substr(0, star));
      mono = t.substr(star + 1);
    } else if (t.find('t') == std::string::npos) {
      c = parse_fq(f, t);
      mono.clear();
    }
    std::int64_t e = 0;
    if (!mono.empty()) {
      if (mono[0] != 't') bad("bad monomial \"" + mono + "\"");
      if (mono.size() == 1)
        e = 1;
      else if (mono[1] == '^')
        e = parse_integer(mono.substr(2));
      else
        bad("bad monomial \"" + mono + "\"");
    }
    r += LaurentPoly::monomial(negative ? -c : c, e);
  }
  return r;
}

namespace {

std::vector<std::string> tuple_items(std::string_view text) {
  const std::string s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') bad("Witt literal must look like (a0,a1,...): \"" + s + "\"");
  const auto items = split_top_level(std::string_view(s).substr(1, s.size() - 2), ',');
  for (const auto& it : items)
    if (trim(it).empty()) bad("empty component in \"" + s + "\"");
  return items;
}

void check_level(std::size_t have, std::optional<unsigned> level) {
  if (level && have != *level)
    throw DomainError("Witt literal has " + std::to_string(have) + " components, expected n = " + std::to_string(*level));
}

}  // namespace

WittFq parse_witt(const FqContext& f, std::string_view text, std::optional<unsigned> level) {
  const std::string s = trim(text);
  if (!s.empty() && s.front() == '{') {
    WittFq x = witt_from_json(parse_json_text(s), &f);
    check_level(x.level(), level);
    return x;
  }
  std::vector<FqElem> comps;
  for (const auto& it : tuple_items(s)) comps.push_back(parse_fq(f, it));
  check_level(comps.size(), level);
  return WittFq(CoeffRing::fq(f), std::move(comps));
}

WittLaurent parse_witt_laurent(const CoeffRing& ring, std::string_view text, std::optional<unsigned> level) {
  const std::string s = trim(text);
  if (!s.empty() && s.front() == '{') {
    WittLaurent x = witt_laurent_from_json(parse_json_text(s), ring.field);
    check_level(x.level(), level);
    return WittLaurent(ring, x.components());
  }
  std::vector<LaurentPoly> comps;
  for (const auto& it : tuple_items(s)) comps.push_back(parse_laurent(*ring.field, it));
  check_level(comps.size(), level);
  return WittLaurent(ring, std::move(comps));
}

OmegaElement parse_omega(const FqContext& f, unsigned precision, std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) bad("empty omega literal");
  if (s.front() == '{') return omega_from_json(parse_json_text(s), &f);
  const CoeffRing ring = CoeffRing::fq(f);
  OmegaElement sum(f, precision);
  if (strip_spaces(s) == "0") return sum;
  auto power_of = [&](const std::string& tok, char base) -> unsigned {
    if (tok.size() == 1) return 1;
    if (tok.size() < 3 || tok[1] != '^') bad("bad factor \"" + tok + "\"");
    const long long k = parse_integer(tok.substr(2));
    if (k < 0) bad(std::string("negative power of ") + base);
    return static_cast<unsigned>(k);
  };
  for (const auto& raw_term : split_top_level(s, '+')) {
    const std::string term = strip_spaces(raw_term);
    if (term.empty()) bad("empty term in omega literal \"" + s + "\"");
    OmegaElement prod = OmegaElement::one(f, precision);
    for (const auto& tok : split_top_level(term, '*')) {
      if (tok.empty()) bad("empty factor in \"" + term + "\"");
      OmegaElement factor;
      if (tok[0] == 'V') {
        factor = OmegaElement::V(f, precision, power_of(tok, 'V'));
      } else if (tok[0] == 'p') {
        factor = OmegaElement::p(f, precision, power_of(tok, 'p'));
      } else if (tok[0] == '(') {
        factor = OmegaElement::constant(parse_witt(f, tok, precision));
      } else if (tok[0] == '[') {
        if (tok.back() != ']') bad("bad Teichmuller factor \"" + tok + "\"");
        factor = OmegaElement::constant(WittFq::teichmuller(ring, parse_fq(f, tok.substr(1, tok.size() - 2)), precision));
      } else {
        factor = OmegaElement::constant(WittFq::from_integer(ring, precision, BigInt(std::to_string(parse_integer(tok)))));
      }
      prod = prod * factor;
    }
    sum = sum + prod;
  }
  return sum;
}

PAdicApprox parse_padic(const FqContext& f, unsigned precision, std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) bad("empty W_Q literal");
  if (s.front() == '{') return padic_from_json(parse_json_text(s), f);
  if (s == "0") return PAdicApprox::exact_zero(f);
  if (s.rfind("O(p^", 0) == 0 && s.back() == ')') return PAdicApprox::zero_mod(f, parse_integer(s.substr(4, s.size() - 5)));
  std::int64_t v = 0;
  std::string rest = s;
  if (s[0] == 'p') {
    const auto star = s.find('*');
    const std::string head = s.substr(0, star);
    if (head == "p")
      v = 1;
    else if (head.size() > 2 && head[1] == '^')
      v = parse_integer(head.substr(2));
    else
      bad("bad W_Q literal \"" + s + "\"");
    if (star == std::string::npos) return PAdicApprox::p_power(f, v, precision);
    rest = s.substr(star + 1);
  }
  WittFq x = parse_witt(f, rest);
  if (x.level() < precision) x = x.zero_pad(precision);
  return PAdicApprox::from_witt(x, v);
}

namespace {

std::vector<std::pair<int, std::string>> slot_items(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  for (const auto& raw : split_top_level(text, ';')) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) bad("slot must look like i=value: \"" + item + "\"");
    out.emplace_back(static_cast<int>(parse_integer(strip_spaces(item.substr(0, eq)))), item.substr(eq + 1));
  }
  return out;
}

}  // namespace

ICheckElement parse_icheck(const FqContext& f, unsigned precision, std::string_view text, std::optional<int> lo,
                           std::optional<int> hi) {
  const std::string s = trim(text);
  if (!s.empty() && s.front() == '{') return icheck_from_json(parse_json_text(s), &f);
  const auto items = slot_items(s);
  int a = lo.value_or(0), b = hi.value_or(0);
  if (!items.empty()) {
    if (!lo) a = items.front().first;
    if (!hi) b = items.front().first;
    for (const auto& it : items) {
      if (!lo) a = std::min(a, it.first);
      if (!hi) b = std::max(b, it.first);
    }
  }
  if (b < a) bad("empty slot window");
  ICheckElement x(f, a, b, true);
  for (const auto& [i, v] : items) {
    if (i < a || i > b) throw DomainError("slot " + std::to_string(i) + " lies outside the window");
    x.set(i, parse_padic(f, precision, v));
  }
  return x;
}

JElement parse_j(const FqContext& f, unsigned precision, std::string_view text) {
  const std::string s = trim(text);
  if (!s.empty() && s.front() == '{') return j_from_json(parse_json_text(s), &f);
  return to_j(parse_icheck(f, precision, s));
}

}  // namespace wittlab::io
