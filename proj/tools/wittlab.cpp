#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wittlab/cech.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/io.hpp"
#include "wittlab/module.hpp"
#include "wittlab/omega.hpp"
#include "wittlab/ore.hpp"
#include "wittlab/poly_cache.hpp"
#include "wittlab/selftest.hpp"
#include "wittlab/witt_polys.hpp"
#include "wittlab/witt_vector.hpp"

using namespace wittlab;
using io::json;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitDomain = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitFailure = 4;

const char* kGrammar = R"TXT(Literal grammar
  field element   integer (image of Z) or coefficient tuple [c0,c1,...] over F_p
  Witt vector     (a0,a1,...) with field-element components; over --ring poly or
                  laurent the components are polynomials such as 1+t^2 or t^-1
  omega           terms joined by '+', each a '*'-product of V, V^k, p, p^k,
                  integers, Witt literals (a0,...) and Teichmuller lifts [a]
  W_Q value       0 | O(p^A) | p^v | (a0,...) | p^v*(a0,...)
  I / J element   slots "i=value" joined by ';', e.g. "0=p^-1;2=(1,1,0)"
  matrix          [[e,...],...] with omega-constant entries, e.g. [[p,0],[0,1]]
  module          W_a+W_b+... (direct sum of W_a), 0, or a JSON module
Inputs starting with '{' are read as JSON documents of the matching type;
every JSON output is accepted back as input.
Exit codes: 0 success, 1 malformed input, 2 domain error, 3 precision or
window exhausted, 4 failed self-test or internal error.)TXT";

struct Config {
  unsigned p = 2;
  unsigned q = 0;
  unsigned n = 2;
  unsigned prec = 3;
  std::int64_t window = 0;
  std::string cache_dir;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string ring = "fq";

  CLI::Option* p_opt = nullptr;
  CLI::Option* q_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* cache_opt = nullptr;

  const FqContext& field() const {
    if (q_opt->count() == 0) return FqContext::get(p);
    const FqContext& f = FqContext::of_order(q);
    if (p_opt->count() > 0 && f.characteristic() != p)
      throw DomainError("--p " + std::to_string(p) + " does not match --q " + std::to_string(q));
    return f;
  }
  std::optional<unsigned> level() const { return n_opt->count() ? std::optional<unsigned>(n) : std::nullopt; }
  CoeffRing coeff_ring() const {
    const FqContext& f = field();
    if (ring == "fq") return CoeffRing::fq(f);
    if (ring == "poly") return CoeffRing::poly(f);
    return CoeffRing::laurent(f);
  }
  std::optional<std::string> cache_flag() const {
    return cache_opt->count() ? std::optional<std::string>(cache_dir) : std::nullopt;
  }
};

Config cfg;

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

// json: the document; text: the pretty form; csv: key,value rows (or the
// table rows for array documents).
void emit(const json& doc, const std::string& text) {
  if (cfg.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    if (doc.is_array() && !doc.empty() && doc.front().is_object()) {
      std::vector<std::string> keys;
      for (auto it = doc.front().begin(); it != doc.front().end(); ++it) keys.push_back(it.key());
      for (std::size_t i = 0; i < keys.size(); ++i) std::cout << (i ? "," : "") << keys[i];
      std::cout << "\n";
      for (const auto& row : doc) {
        for (std::size_t i = 0; i < keys.size(); ++i) std::cout << (i ? "," : "") << csv_cell(row.value(keys[i], json()));
        std::cout << "\n";
      }
    } else if (doc.is_object()) {
      std::cout << "key,value\n";
      for (auto it = doc.begin(); it != doc.end(); ++it) std::cout << it.key() << "," << csv_cell(it.value()) << "\n";
    } else {
      std::cout << csv_cell(doc) << "\n";
    }
  } else {
    std::cout << text << (text.empty() || text.back() != '\n' ? "\n" : "");
  }
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string strip(const std::string& s) {
  std::string r;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) r += c;
  return r;
}

// ---------------------------------------------------------------------------
// Matrices and modules

ChainMatrix parse_matrix(const FqContext& f, unsigned level, const std::string& text, std::optional<std::size_t> cols) {
  const std::string s = strip(text);
  if (s.find('{') != std::string::npos) {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed JSON matrix: ") + e.what());
    }
    if (j.is_object() && j.contains("matrix")) j = j.at("matrix");
    std::size_t c = cols.value_or(j.is_array() && !j.empty() && j.front().is_array() ? j.front().size() : 0);
    return io::matrix_from_json(j, f, level, c);
  }
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError("matrix must look like [[a,b],[c,d]]");
  std::vector<ChainVector> rows;
  std::size_t width = cols.value_or(0);
  bool width_known = cols.has_value();
  for (const auto& r : io::split_top_level(std::string_view(s).substr(1, s.size() - 2), ',')) {
    if (r.empty()) continue;
    if (r.size() < 2 || r.front() != '[' || r.back() != ']') throw ParseError("matrix row must look like [a,b]: \"" + r + "\"");
    ChainVector row;
    for (const auto& e : io::split_top_level(std::string_view(r).substr(1, r.size() - 2), ',')) {
      const OmegaElement x = io::parse_omega(f, level, e);
      if (!x.is_zero() && x.degree() != 0) throw DomainError("matrix entry \"" + e + "\" involves V");
      row.push_back(x.coefficient(0));
    }
    if (!width_known) {
      width = row.size();
      width_known = true;
    }
    if (row.size() != width) throw DomainError("matrix rows have different lengths");
    rows.push_back(std::move(row));
  }
  return ChainMatrix::from_rows(f, level, width, rows);
}

FiniteChainModule parse_module(const FqContext& f, const std::string& text) {
  const std::string s = strip(text);
  if (!s.empty() && s.front() == '{') {
    try {
      return io::module_from_json(json::parse(s), &f);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed JSON module: ") + e.what());
    }
  }
  if (s == "0") return FiniteChainModule(f, cfg.n, 0);
  std::vector<unsigned> inv;
  for (const auto& part : io::split_top_level(s, '+')) {
    if (part.rfind("W_", 0) != 0) throw ParseError("module summand must look like W_a: \"" + part + "\"");
    try {
      std::size_t used = 0;
      const int e = std::stoi(part.substr(2), &used);
      if (used != part.size() - 2 || e < 1) throw ParseError("bad summand \"" + part + "\"");
      inv.push_back(static_cast<unsigned>(e));
    } catch (const std::logic_error&) {
      throw ParseError("bad summand \"" + part + "\"");
    }
  }
  const unsigned top = *std::max_element(inv.begin(), inv.end());
  const unsigned level = cfg.level().value_or(top);
  if (level < top) throw DomainError("summand W_" + std::to_string(top) + " exceeds level " + std::to_string(level));
  std::sort(inv.begin(), inv.end());
  return FiniteChainModule::direct_sum(f, level, inv);
}

std::string inv_text(const std::vector<unsigned>& inv) { return invariants_to_string(inv); }

// ---------------------------------------------------------------------------
// wittpoly

void wittpoly_gen(bool force) {
  const PolyCache cache(resolve_cache_dir(cfg.cache_flag()));
  const auto start = std::chrono::steady_clock::now();
  WittPolySet set;
  if (force) {
    set = generate_witt_polys(cfg.p, cfg.n);
    cache.store(set);
  } else {
    set = cache.load_or_generate(cfg.p, cfg.n);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto rep = verify_ghost_identities(set);
  auto counts = [](const std::vector<IntPoly>& v) {
    std::vector<std::size_t> c;
    for (const auto& x : v) c.push_back(x.num_terms());
    return c;
  };
  json doc = {{"p", set.prime},
              {"n", set.level},
              {"cache_file", cache.file_for(cfg.p, cfg.n).string()},
              {"terms",
               {{"sum", counts(set.sum)},
                {"product", counts(set.product)},
                {"negation", counts(set.negation)},
                {"frobenius", counts(set.frobenius)}}},
              {"ghost_identities", rep.ok},
              {"failures", rep.failures},
              {"seconds", secs}};
  std::ostringstream t;
  t << "Witt polynomials p=" << set.prime << " n=" << set.level << " -> " << cache.file_for(cfg.p, cfg.n).string() << "\n";
  for (const auto& [name, fam] : {std::pair{"sum", &set.sum}, std::pair{"product", &set.product},
                                  std::pair{"negation", &set.negation}, std::pair{"frobenius", &set.frobenius}}) {
    std::vector<std::string> c;
    for (auto k : counts(*fam)) c.push_back(std::to_string(k));
    t << "  " << name << " terms: " << join(c, " ") << "\n";
  }
  t << "  ghost identities: " << (rep.ok ? "hold" : "FAIL") << "\n  time: " << secs << " s";
  emit(doc, t.str());
  if (!rep.ok) throw InternalError("ghost identities fail for the generated polynomials");
}

void wittpoly_show(const std::string& family) {
  const WittPolySet set = cfg.cache_opt->count() || std::getenv(kCacheEnvVar)
                              ? PolyCache(resolve_cache_dir(cfg.cache_flag())).load_or_generate(cfg.p, cfg.n)
                              : generate_witt_polys(cfg.p, cfg.n);
  const std::vector<std::tuple<std::string, std::string, const std::vector<IntPoly>*>> fams = {
      {"ghost", "w", &set.ghost},   {"sum", "S", &set.sum},           {"product", "P", &set.product},
      {"negation", "N", &set.negation}, {"frobenius", "F", &set.frobenius}};
  json doc = {{"p", set.prime}, {"n", set.level}, {"families", json::object()}};
  std::ostringstream t;
  bool any = false;
  for (const auto& [name, letter, polys] : fams) {
    if (family != "all" && family != name) continue;
    any = true;
    json arr = json::array();
    for (std::size_t k = 0; k < polys->size(); ++k) {
      arr.push_back((*polys)[k].to_string());
      t << letter << "_" << k << " = " << (*polys)[k].to_string() << "\n";
    }
    doc["families"][name] = arr;
  }
  if (!any) throw ParseError("unknown family \"" + family + "\"");
  emit(doc, t.str());
}

// ---------------------------------------------------------------------------
// witt

template <class W>
void emit_witt(const W& x) {
  emit(io::to_json(x), x.to_string());
}

void witt_command(const std::string& op, const std::vector<std::string>& args, unsigned target) {
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ParseError("witt " + op + " takes " + std::to_string(k) + " argument(s)");
  };
  const CoeffRing ring = cfg.coeff_ring();
  if (ring.kind == RingKind::Fq) {
    const FqContext& f = *ring.field;
    auto arg = [&](std::size_t i) { return io::parse_witt(f, args[i], cfg.level()); };
    if (op == "add") return need(2), emit_witt(arg(0) + arg(1));
    if (op == "mul") return need(2), emit_witt(arg(0) * arg(1));
    if (op == "teich") return need(1), emit_witt(WittFq::teichmuller(ring, io::parse_fq(f, args[0]), cfg.n));
    if (op == "frob") return need(1), emit_witt(arg(0).frobenius());
    if (op == "versch") return need(1), emit_witt(arg(0).verschiebung());
    if (op == "restrict") return need(1), emit_witt(arg(0).restrict(target));
    if (op == "ghost") {
      need(1);
      const auto g = ghost_vector(arg(0));
      json doc = json::array();
      std::vector<std::string> s;
      for (const auto& w : g) {
        doc.push_back(w.get_str());
        s.push_back(w.get_str());
      }
      return emit(doc, "(" + join(s, ",") + ")");
    }
  } else {
    auto arg = [&](std::size_t i) { return io::parse_witt_laurent(ring, args[i], cfg.level()); };
    if (op == "add") return need(2), emit_witt(arg(0) + arg(1));
    if (op == "mul") return need(2), emit_witt(arg(0) * arg(1));
    if (op == "teich")
      return need(1), emit_witt(WittLaurent::teichmuller(ring, io::parse_laurent(*ring.field, args[0]), cfg.n));
    if (op == "frob") return need(1), emit_witt(arg(0).frobenius());
    if (op == "versch") return need(1), emit_witt(arg(0).verschiebung());
    if (op == "restrict") return need(1), emit_witt(arg(0).restrict(target));
    if (op == "ghost") throw DomainError("ghost components are reported for the prime field only");
  }
  throw ParseError("unknown witt operation " + op);
}

// ---------------------------------------------------------------------------
// omega

OmegaTrunc parse_trunc(const FqContext& f, const std::string& text) {
  const std::string s = strip(text);
  if (!s.empty() && s.front() == '{') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (j.contains("slots")) return io::omega_trunc_from_json(j, &f);
    return OmegaTrunc::project(io::omega_from_json(j, &f), cfg.n);
  }
  return OmegaTrunc::project(io::parse_omega(f, std::max(cfg.prec, cfg.n), s), cfg.n);
}

void emit_clm(const ClmWitness& w) {
  std::ostringstream t;
  t << "gamma = " << w.gamma.to_string() << "\ndelta = " << w.delta.to_string() << "\nresidual = "
    << w.residual.to_string() << " on V-window [" << w.window_lo << ", " << w.window_hi << "]\nmethod = " << w.method
    << " (" << w.orientation << ")";
  if (!w.history.empty()) {
    std::vector<std::string> h;
    for (const auto& r : w.history) h.push_back("k=" + std::to_string(r.k) + ":p^" + std::to_string(r.s));
    t << "\nrescaling = " << join(h, " ");
  }
  emit(io::to_json(w), t.str());
}

void omega_command(const std::string& op, const std::vector<std::string>& args, std::optional<int> hi) {
  const FqContext& f = cfg.field();
  const unsigned m = cfg.prec;
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ParseError("omega " + op + " takes " + std::to_string(k) + " argument(s)");
  };
  auto el = [&](std::size_t i) { return io::parse_omega(f, m, args[i]); };
  if (op == "mul") {
    need(2);
    const OmegaElement r = el(0) * el(1);
    return emit(io::to_json(r), r.to_string());
  }
  if (op == "project") {
    need(1);
    const OmegaTrunc r = OmegaTrunc::project(io::parse_omega(f, std::max(m, cfg.n), args[0]), cfg.n);
    return emit(io::to_json(r), r.to_string());
  }
  if (op == "pi" || op == "rho") {
    need(1);
    const OmegaTrunc x = parse_trunc(f, args[0]);
    const OmegaTrunc r = op == "pi" ? x.pi() : x.rho();
    return emit(io::to_json(r), r.to_string());
  }
  if (op == "clm") {
    need(2);
    return emit_clm(common_left_multiple(el(0), el(1)));
  }
  if (op == "baer-extend") {
    need(2);
    const BaerResult r = baer_extend(el(0), io::parse_icheck(f, m, args[1]), hi);
    std::ostringstream t;
    t << "c = " << r.c.to_string() << "\nresidual = " << r.residual.to_string()
      << "\nprecision floor = " << r.precision_floor;
    return emit(io::to_json(r), t.str());
  }
  if (op == "lift") {
    need(4);
    const JElement a = io::parse_j(f, m, args[2]), b = io::parse_j(f, m, args[3]);
    const int top = hi.value_or(std::max(a.hi, b.hi) + 4);
    const LiftPairResult r = lift_pair(el(0), el(1), a, b, top);
    std::ostringstream t;
    t << "a' = " << r.a_lift.to_string() << "\nb' = " << r.b_lift.to_string() << "\nadjusted = " << r.adjusted
      << "\nresidual = " << r.residual.to_string() << (r.residual_zero ? " (zero)" : " (NONZERO)")
      << "\nquotients match = " << (r.quotients_match ? "yes" : "no");
    emit(io::to_json(r), t.str());
    if (!r.residual_zero) throw PrecisionError("no lift with zero residual on the window");
    return;
  }
  throw ParseError("unknown omega operation " + op);
}

// ---------------------------------------------------------------------------
// module

struct ModuleArgs {
  unsigned trunc = 1;
  std::string p_action, v_action;
  long long v_twist = -1;
  unsigned changes = 0;
  std::size_t sample = 0;
};

SemilinearMap parse_action(const FqContext& f, const FiniteChainModule& m, const std::string& text, long long twist,
                           const WittFq& fallback_scale) {
  if (text.empty()) return SemilinearMap{ChainMatrix::identity(f, m.level, m.generators).scaled(fallback_scale), twist};
  if (strip(text).front() == '{') {
    try {
      json j = json::parse(strip(text));
      if (j.contains("twist")) return io::semilinear_from_json(j, f, m.level, m.generators);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed JSON action: ") + e.what());
    }
  }
  ChainMatrix a = parse_matrix(f, m.level, text, m.generators);
  if (a.rows() != m.generators) throw DomainError("action matrix must be square of size " + std::to_string(m.generators));
  return SemilinearMap{a, twist};
}

void module_command(const std::string& op, const std::vector<std::string>& args, const ModuleArgs& ma) {
  const FqContext& f = cfg.field();
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ParseError("module " + op + " takes " + std::to_string(k) + " argument(s)");
  };
  if (op == "nf") {
    need(1);
    const ChainMatrix rel = parse_matrix(f, cfg.n, args[0], std::nullopt);
    const FiniteChainModule mod(f, cfg.n, rel.cols(), rel);
    const auto inv = mod.invariants();
    json doc = {{"invariants", inv}, {"log_q_size", log_size_from_invariants(inv)}, {"module", io::to_json(mod)}};
    return emit(doc, inv_text(inv));
  }
  if (op == "tensor") {
    need(1);
    const FiniteChainModule mod = parse_module(f, args[0]);
    const SemilinearMap v = parse_action(f, mod, ma.v_action, ma.v_twist, p_power(f, mod.level, 1));
    const auto r = trunc_tensor(mod, v, ma.trunc);
    std::ostringstream t;
    t << "Tor_0(omega_" << ma.trunc << ", M) = " << inv_text(r.tor0_invariants) << "\nTor_1(omega_" << ma.trunc
      << ", M) = " << inv_text(r.tor1_invariants);
    return emit(io::to_json(r), t.str());
  }
  if (op == "dual") {
    need(0);
    const auto h = enumerate_homs(f, cfg.n);
    const auto basis = dual_basis(f, cfg.n);
    json doc = io::to_json(h);
    json b = json::array();
    std::ostringstream t;
    t << "Hom_W" << cfg.n << "(omega_" << cfg.n << ", W_" << cfg.n << "): " << h.maps.size() << " maps found among "
      << h.candidates << " candidates; decomposition predicts " << h.decomposition_count
      << "; pairing match: " << (h.matches_pairings ? "yes" : "no") << "\nbasis:";
    for (const auto& phi : basis) {
      json slots = json::array();
      std::vector<std::string> s;
      for (const auto& x : phi.slots) {
        slots.push_back(io::to_json(x));
        s.push_back(x.to_string());
      }
      b.push_back(slots);
      t << "\n  [" << join(s, ", ") << "]";
    }
    doc["basis"] = b;
    return emit(doc, t.str());
  }
  if (op == "transition-check") {
    need(0);
    const auto r = transition_check(f, cfg.n, ma.sample, cfg.seed);
    emit(io::to_json(r), r.to_table());
    if (!r.ok()) throw InternalError("transition maps are not slot-wise restriction");
    return;
  }
  if (op == "torsion-compare") {
    need(1);
    const FiniteChainModule mod = parse_module(f, args[0]);
    const SemilinearMap pa = parse_action(f, mod, ma.p_action, 0, p_power(f, mod.level, 1));
    const SemilinearMap va = parse_action(f, mod, ma.v_action, ma.v_twist, p_power(f, mod.level, 1));
    const auto r = torsion_compare(mod, pa, va);
    std::mt19937_64 rng(cfg.seed);
    bool stable = true;
    for (unsigned k = 0; k < ma.changes; ++k) {
      const auto ch = random_presentation_change(mod, pa, va, rng);
      const auto r2 = torsion_compare(ch.module, ch.p_action, ch.v_action);
      stable = stable && r2.coincide == r.coincide && r2.p_torsion == r.p_torsion && r2.v_torsion == r.v_torsion;
    }
    json doc = io::to_json(r);
    doc["presentation_changes"] = ma.changes;
    doc["stable"] = stable;
    std::ostringstream t;
    t << "ker p = " << inv_text(r.p_torsion) << "\nker V = " << inv_text(r.v_torsion)
      << "\ncoincide = " << (r.coincide ? "yes" : "no");
    if (ma.changes) t << "\nstable under " << ma.changes << " presentation changes: " << (stable ? "yes" : "no");
    return emit(doc, t.str());
  }
  throw ParseError("unknown module operation " + op);
}

// ---------------------------------------------------------------------------
// cech

std::string cohomology_text(const CohomologyResult& r) {
  std::ostringstream t;
  t << "H^0(P^1, W_" << r.n << "O(" << r.d << ")) = " << inv_text(r.h0) << "   |H^0| = q^" << r.log_h0() << "\n"
    << "H^1(P^1, W_" << r.n << "O(" << r.d << ")) = " << inv_text(r.h1) << "   |H^1| = q^" << r.log_h1() << "\n"
    << "window " << r.window << (r.stabilized ? " (stabilized)" : " (NOT stabilized)");
  return t.str();
}

struct CechArgs {
  std::int64_t d = -1;
  std::int64_t d_min = -4, d_max = 4;
  unsigned n_max = 3;
  unsigned s = 1;
};

void cech_command(const std::string& op, const CechArgs& ca) {
  const FqContext& f = cfg.field();
  if (op == "compute") {
    const auto r = cohomology(f, ca.d, cfg.n, cfg.window);
    emit(io::to_json(r), cohomology_text(r));
    if (!r.stabilized) throw PrecisionError("window did not stabilize");
    return;
  }
  if (op == "table") {
    json rows = json::array();
    std::ostringstream t;
    t << "  d  n  H^0              H^1              log|H^0| log|H^1| window stable\n";
    bool all_stable = true;
    const auto start = std::chrono::steady_clock::now();
    for (unsigned n = 1; n <= ca.n_max; ++n) {
      for (std::int64_t d = ca.d_min; d <= ca.d_max; ++d) {
        const auto r = cohomology(f, d, n, cfg.window);
        all_stable = all_stable && r.stabilized;
        rows.push_back({{"d", d},
                        {"n", n},
                        {"q", r.q},
                        {"h0", inv_text(r.h0)},
                        {"h1", inv_text(r.h1)},
                        {"log_q_h0", r.log_h0()},
                        {"log_q_h1", r.log_h1()},
                        {"window", r.window},
                        {"stabilized", r.stabilized}});
        char line[256];
        std::snprintf(line, sizeof line, "%3lld %2u  %-16s %-16s %8zu %8zu %6lld %s\n", static_cast<long long>(d), n,
                      inv_text(r.h0).c_str(), inv_text(r.h1).c_str(), r.log_h0(), r.log_h1(),
                      static_cast<long long>(r.window), r.stabilized ? "yes" : "no");
        t << line;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t << "q = " << f.order() << ", " << rows.size() << " cells, " << secs << " s";
    if (cfg.format == "json")
      emit(json{{"q", f.order()}, {"cells", rows}, {"seconds", secs}}, "");
    else
      emit(rows, t.str());
    if (!all_stable) throw PrecisionError("some cells did not stabilize");
    return;
  }
  if (op == "tanaka-probe") {
    const auto r = tanaka_probe(f, ca.s, cfg.n);
    std::ostringstream t;
    t << "s = " << r.s << ", q = " << r.q << "\n";
    for (const auto& l : r.levels)
      t << "  n=" << l.n << "  H^0(-s) = " << inv_text(l.h0) << "  H^1(-s) = " << inv_text(l.h1)
        << "  H^1(-ps) = " << inv_text(l.h1_twisted) << "  ker p = " << inv_text(l.ker_p)
        << "  ker V = " << inv_text(l.ker_v) << "  coincide = " << (l.kernels_coincide ? "yes" : "no") << "\n";
    t << "H^0 vanishes at every level: " << (r.h0_vanishes ? "yes" : "no");
    return emit(io::to_json(r), t.str());
  }
  throw ParseError("unknown cech operation " + op);
}

int run_selftest_command(unsigned instances) {
  std::ostringstream log;
  const auto checks = run_selftest(cfg.seed, instances, cfg.format == "text" ? &std::cout : nullptr);
  bool ok = true;
  json doc = json::array();
  for (const auto& c : checks) {
    ok = ok && c.passed;
    doc.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  if (cfg.format != "text") emit(doc, "");
  else std::cout << (ok ? "selftest passed" : "selftest FAILED") << "\n";
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wittlab: Witt vectors, the ring omega, and Cech cohomology of Witt line bundles on P^1"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.fallthrough();
  cfg.p_opt = app.add_option("--p", cfg.p, "prime (default 2)");
  cfg.q_opt = app.add_option("--q", cfg.q, "field order q = p^m (built-in moduli for 4, 8, 9, 16)");
  cfg.n_opt = app.add_option("--n", cfg.n, "Witt level / truncation level (default 2)");
  app.add_option("--prec", cfg.prec, "omega coefficient precision (default 3)");
  app.add_option("--window", cfg.window, "initial Cech exponent window (0 = automatic)");
  cfg.cache_opt = app.add_option("--cache-dir", cfg.cache_dir, "polynomial cache directory (else $WITTLAB_CACHE, else ./witt-cache)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--seed", cfg.seed, "seed for every randomized run (default 1)");

  std::vector<std::string> args;
  std::array<std::string, 4> slots;
  // Separate scalar positionals keep CLI11 from splitting bracketed literals.
  auto add_args = [&](CLI::App* sc, std::size_t k, bool required) {
    for (std::size_t i = 0; i < k; ++i) {
      auto* o = sc->add_option(std::string(1, static_cast<char>('a' + i)), slots[i], "literal");
      if (required && i == 0) o->required();
    }
  };
  std::string family = "all";
  bool force = false;
  unsigned target = 1;
  std::optional<int> hi;
  ModuleArgs ma;
  CechArgs ca;
  unsigned instances = 200;
  std::function<int()> action;

  auto* wp = app.add_subcommand("wittpoly", "universal Witt polynomials");
  wp->require_subcommand(1);
  auto* wp_gen = wp->add_subcommand("gen", "generate (or load) and verify the set for (--p, --n), storing it in the cache");
  wp_gen->add_flag("--force", force, "regenerate even when cached");
  wp_gen->callback([&] { action = [&] { return wittpoly_gen(force), 0; }; });
  auto* wp_show = wp->add_subcommand("show", "print the polynomials");
  wp_show->add_option("--family", family, "ghost|sum|product|negation|frobenius|all")
      ->check(CLI::IsMember({"ghost", "sum", "product", "negation", "frobenius", "all"}));
  wp_show->callback([&] { action = [&] { return wittpoly_show(family), 0; }; });

  auto* witt = app.add_subcommand("witt", "arithmetic in W_n(A)");
  witt->require_subcommand(1);
  witt->add_option("--ring", cfg.ring, "coefficient ring")->check(CLI::IsMember({"fq", "poly", "laurent"}));
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"add", "x + y"}, {"mul", "x * y"}, {"teich", "Teichmuller lift of a ring element at level --n"},
           {"ghost", "ghost components mod p^n (prime field)"}, {"frob", "Frobenius F"},
           {"versch", "Verschiebung V (level n -> n+1)"}, {"restrict", "restriction R to level --to"}}) {
    auto* sc = witt->add_subcommand(name, help);
    add_args(sc, 2, true);
    if (name == "restrict") sc->add_option("--to", target, "target level")->required();
    const std::string op = name;
    sc->callback([&, op] { action = [&, op] { return witt_command(op, args, target), 0; }; });
  }

  auto* om = app.add_subcommand("omega", "the ring omega = W<V>, its truncations, and the Ext-vanishing solvers");
  om->require_subcommand(1);
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"mul", "product of two elements of omega"},
           {"project", "image in omega_n"},
           {"pi", "restriction omega_n -> omega_{n-1}"},
           {"rho", "multiplication by p, omega_n -> omega_{n+1}"},
           {"clm", "common left multiple: gamma*alpha = delta*beta"},
           {"baer-extend", "solve alpha * c = a in I"},
           {"lift", "lift a, b in J with gamma*a = delta*b to I: gamma delta a b"}}) {
    auto* sc = om->add_subcommand(name, help);
    add_args(sc, 4, true);
    if (name == "baer-extend" || name == "lift") sc->add_option("--hi", hi, "top slot of the working window");
    const std::string op = name;
    sc->callback([&, op] { action = [&, op] { return omega_command(op, args, hi), 0; }; });
  }

  auto* mod = app.add_subcommand("module", "finite modules over W_n(F_q)");
  mod->require_subcommand(1);
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"nf", "invariants of W_n^g / rowspan(relations)"},
           {"tensor", "Tor_*(omega_k, M) through coker/ker of V^k"},
           {"dual", "brute-force Hom_{W_n}(omega_n, W_n) against the slot decomposition"},
           {"transition-check", "transition maps on duals equal slot-wise R"},
           {"torsion-compare", "compare ker p and ker V on M"}}) {
    auto* sc = mod->add_subcommand(name, help);
    if (name == "nf" || name == "tensor" || name == "torsion-compare") add_args(sc, 1, true);
    if (name == "tensor") sc->add_option("--trunc", ma.trunc, "k in omega_k (default 1)");
    if (name == "tensor" || name == "torsion-compare") {
      sc->add_option("--v-action", ma.v_action, "V-action matrix (default p * identity)");
      sc->add_option("--v-twist", ma.v_twist, "semilinearity twist of V (default -1)");
    }
    if (name == "torsion-compare") {
      sc->add_option("--p-action", ma.p_action, "p-action matrix (default p * identity)");
      sc->add_option("--changes", ma.changes, "random presentation changes to test stability");
    }
    if (name == "transition-check") sc->add_option("--sample", ma.sample, "test this many random duals (0 = all)");
    const std::string op = name;
    sc->callback([&, op] { action = [&, op] { return module_command(op, args, ma), 0; }; });
  }

  auto* cech = app.add_subcommand("cech", "Cech cohomology of W_n O(d) on P^1");
  cech->require_subcommand(1);
  auto* cc = cech->add_subcommand("compute", "H^0 and H^1 for (--d, --n, --q)");
  cc->add_option("--d", ca.d, "twist d")->required();
  cc->callback([&] { action = [&] { return cech_command("compute", ca), 0; }; });
  auto* ct = cech->add_subcommand("table", "cohomology over d_min..d_max, n = 1..n_max");
  ct->add_option("--d-min", ca.d_min, "default -4");
  ct->add_option("--d-max", ca.d_max, "default 4");
  ct->add_option("--n-max", ca.n_max, "default 3");
  ct->callback([&] { action = [&] { return cech_command("table", ca), 0; }; });
  auto* tp = cech->add_subcommand("tanaka-probe", "H^0 vanishing and the p/V kernels for O(-s), levels 1..n");
  tp->add_option("--s", ca.s, "s >= 1")->required();
  tp->callback([&] { action = [&] { return cech_command("tanaka-probe", ca), 0; }; });

  auto* st = app.add_subcommand("selftest", "run the invariant suite");
  st->add_option("--instances", instances, "random instances per property (default 200)");
  st->callback([&] { action = [&] { return run_selftest_command(instances); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }
  for (const auto& s : slots)
    if (!s.empty()) args.push_back(s);
  try {
    if (cfg.cache_opt->count() || std::getenv(kCacheEnvVar)) set_witt_cache_dir(resolve_cache_dir(cfg.cache_flag()).string());
    return action();
  } catch (const ParseError& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n(see --help for the literal grammar)\n";
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const PrecisionError& e) {
    std::cerr << "error: precision: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitFailure;
  }
}
