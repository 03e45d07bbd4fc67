#include "wittlab/cech.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "wittlab/errors.hpp"

namespace wittlab {

std::string CechGen::to_string() const {
  std::ostringstream os;
  const char* var = chart == Chart::U ? "u" : "t";
  if (k > 0) os << "V^" << k;
  os << "[" << var << "^" << j << "]";
  if (chart == Chart::T) os << "@U0";
  if (chart == Chart::U) os << "@U1";
  return os.str();
}

WittLaurent generator_element(const FqContext& field, unsigned n, unsigned k, std::int64_t j) {
  if (k >= n) throw DomainError("generator V^" + std::to_string(k) + " vanishes at level " + std::to_string(n));
  std::vector<LaurentPoly> comps(n, LaurentPoly(field));
  comps[k] = LaurentPoly::t_power(field, j);
  return WittLaurent(CoeffRing::laurent(field), std::move(comps));
}

namespace {

unsigned p_adic_valuation(std::int64_t e, unsigned p, unsigned cap) {
  if (e == 0) return cap;
  unsigned v = 0;
  while (v < cap && e % static_cast<std::int64_t>(p) == 0) {
    e /= static_cast<std::int64_t>(p);
    ++v;
  }
  return v;
}

std::int64_t ipow(unsigned p, unsigned k) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

// Canonical representative modulo p^{n-k}, zero-padded back to level n.
WittFq reduce_coefficient(const WittFq& c, unsigned n, unsigned k) {
  return c.restrict(n - k).zero_pad(n);
}

}  // namespace

std::map<CechGen, WittFq> decompose(const WittLaurent& x, Chart chart) {
  const FqContext& field = *x.ring().field;
  const unsigned n = x.level();
  const unsigned p = field.characteristic();
  const CoeffRing fq = CoeffRing::fq(field);
  std::map<CechGen, WittFq> out;
  WittLaurent y = x;
  for (unsigned i = 0; i < n; ++i) {
    while (!y[i].is_zero()) {
      const auto [e, c] = y[i].terms().front();
      if (chart != Chart::Overlap && e < 0) throw DomainError("negative exponent in a chart element");
      const unsigned s = std::min(i, p_adic_valuation(e, p, i));
      const CechGen key{chart, i - s, e / ipow(p, s)};
      const WittFq coef = WittFq::teichmuller(fq, c.frobenius_power(-static_cast<long long>(i)), n).mul_by_p_power(s);
      auto it = out.find(key);
      if (it == out.end())
        out.emplace(key, coef);
      else
        it->second = it->second + coef;
      std::vector<LaurentPoly> comps(n, LaurentPoly(field));
      comps[i] = LaurentPoly::monomial(c, e);
      y = y - WittLaurent(x.ring(), std::move(comps));
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it->second = reduce_coefficient(it->second, n, it->first.k);
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

WittLaurent recompose(const FqContext& field, unsigned n, const std::map<CechGen, WittFq>& coords) {
  const CoeffRing ring = CoeffRing::laurent(field);
  const unsigned p = field.characteristic();
  WittLaurent acc = WittLaurent::zero(ring, n);
  for (const auto& [g, c] : coords) {
    // c V^k([t^j]) = V^k(F^k(c) [t^j]); (a_m) [t^j] has components a_m t^{j p^m}.
    const WittFq fc = c.frobenius_power(static_cast<long long>(g.k)).restrict(n - g.k);
    std::vector<LaurentPoly> comps(n, LaurentPoly(field));
    for (unsigned m = 0; m + g.k < n; ++m) comps[m + g.k] = LaurentPoly::monomial(fc[m], g.j * ipow(p, m));
    acc = acc + WittLaurent(ring, std::move(comps));
  }
  return acc;
}

std::int64_t minimal_window(unsigned p, std::int64_t d, unsigned n) {
  return std::llabs(d) * ipow(p, n - 1) + 1;
}

namespace {

WittFq gen_relation(const FqContext& f, unsigned n, unsigned k) { return p_power(f, n, n - k); }

void fill_relations(ChainMatrix& rel, const std::vector<CechGen>& gens, const FqContext& f, unsigned n) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].k == 0) continue;
    ChainMatrix::Row r;
    r.emplace(i, gen_relation(f, n, gens[i].k));
    rel.append_row(std::move(r));
  }
}

WittLaurent to_overlap(const WittLaurent& chart_u) {
  std::vector<LaurentPoly> comps;
  for (const auto& c : chart_u.components()) comps.push_back(c.invert_variable());
  return WittLaurent(chart_u.ring(), std::move(comps));
}

}  // namespace

CechComplex CechComplex::build(const FqContext& field, std::int64_t d, unsigned n, std::int64_t window) {
  if (n < 1) throw DomainError("Cech complex needs n >= 1");
  const unsigned p = field.characteristic();
  CechComplex c;
  c.field = &field;
  c.d = d;
  c.n = n;
  c.window = window;
  for (unsigned k = 0; k < n; ++k)
    for (std::int64_t j = -window; j <= window; ++j)
      if (k == 0 || j % static_cast<std::int64_t>(p) != 0) c.c1.push_back({Chart::Overlap, k, j});
  if (c.c1.size() > kCechGeneratorCap)
    throw PrecisionError("Cech window " + std::to_string(window) + " needs " + std::to_string(c.c1.size()) +
                         " overlap generators, cap is " + std::to_string(kCechGeneratorCap));
  for (std::size_t i = 0; i < c.c1.size(); ++i) c.c1_index.emplace(c.c1[i], i);

  const CoeffRing ring = CoeffRing::laurent(field);
  const WittLaurent transition = WittLaurent::teichmuller(ring, LaurentPoly::t_power(field, -d), n);
  std::vector<std::map<CechGen, WittFq>> columns;
  auto consider = [&](const CechGen& g, const WittLaurent& image) {
    auto coords = decompose(image, Chart::Overlap);
    for (const auto& [key, coef] : coords)
      if (!c.c1_index.count(key)) return;
    c.c0.push_back(g);
    columns.push_back(std::move(coords));
  };
  for (unsigned k = 0; k < n; ++k) {
    const std::int64_t shift = ipow(p, k) * d;
    for (std::int64_t j = std::max<std::int64_t>(0, shift - window); j <= shift + window; ++j) {
      if (k > 0 && j % static_cast<std::int64_t>(p) == 0) continue;
      consider({Chart::T, k, j}, transition * generator_element(field, n, k, j));
    }
  }
  for (unsigned k = 0; k < n; ++k)
    for (std::int64_t j = 0; j <= window; ++j) {
      if (k > 0 && j % static_cast<std::int64_t>(p) == 0) continue;
      consider({Chart::U, k, j}, -to_overlap(generator_element(field, n, k, j)));
    }
  for (std::size_t i = 0; i < c.c0.size(); ++i) c.c0_index.emplace(c.c0[i], i);

  c.diff = ChainMatrix(field, n, c.c1.size(), c.c0.size());
  for (std::size_t col = 0; col < columns.size(); ++col)
    for (const auto& [key, coef] : columns[col]) c.diff.set(c.c1_index.at(key), col, coef);
  c.rel0 = ChainMatrix(field, n, 0, c.c0.size());
  c.rel1 = ChainMatrix(field, n, 0, c.c1.size());
  fill_relations(c.rel0, c.c0, field, n);
  fill_relations(c.rel1, c.c1, field, n);
  c.h0_generators = induced_kernel(c.diff, c.rel1);
  c.h1_relations = c.rel1.vconcat(c.diff.transpose());
  return c;
}

CohomologyResult cohomology(const FqContext& field, std::int64_t d, unsigned n, std::int64_t window) {
  if (n < 1) throw DomainError("cohomology needs n >= 1");
  CohomologyResult r;
  r.d = d;
  r.n = n;
  r.q = field.order();
  std::int64_t w = std::max(window, minimal_window(field.characteristic(), d, n));
  std::vector<std::pair<std::vector<unsigned>, std::vector<unsigned>>> seen;
  for (;;) {
    CechComplex c = CechComplex::build(field, d, n, w);
    auto h0 = submodule_invariants(c.h0_generators, c.rel0);
    auto h1 = chain_normal_form(c.h1_relations);
    r.windows_tried.push_back(w);
    seen.emplace_back(h0, h1);
    r.h0 = std::move(h0);
    r.h1 = std::move(h1);
    r.window = w;
    r.complex = std::move(c);
    const std::size_t s = seen.size();
    if (s >= 3 && seen[s - 1] == seen[s - 2] && seen[s - 2] == seen[s - 3]) {
      r.stabilized = true;
      return r;
    }
    w *= 2;
  }
}

std::string to_string(CechOp op) {
  switch (op) {
    case CechOp::R: return "R";
    case CechOp::P: return "p";
    case CechOp::F: return "F";
    case CechOp::V: return "V";
  }
  return "?";
}

namespace {

WittFq lift_entry(const WittFq& x, unsigned level) { return x.level() == level ? x : x.zero_pad(level); }

ChainMatrix lift_matrix(const ChainMatrix& m, unsigned level) {
  if (m.level() == level) return m;
  ChainMatrix r(m.field(), level, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, x] : m.row(i)) r.set(i, j, lift_entry(x, level));
  return r;
}

// Presentation of a level-n module at a higher level: lifted rows plus p^n.
ChainMatrix lift_relations(const ChainMatrix& rel, unsigned level) {
  if (rel.level() == level) return rel;
  ChainMatrix r = lift_matrix(rel, level);
  const WittFq pn = p_power(rel.field(), level, rel.level());
  for (std::size_t i = 0; i < rel.cols(); ++i) {
    ChainMatrix::Row row;
    row.emplace(i, pn);
    r.append_row(std::move(row));
  }
  return r;
}

WittLaurent apply_op(CechOp op, const WittLaurent& x) {
  switch (op) {
    case CechOp::R: return x.restrict(x.level() - 1);
    case CechOp::P: return x.mul_by_p();
    case CechOp::F: return x.frobenius_general();
    case CechOp::V: return x.verschiebung();
  }
  throw InternalError("unknown Cech operator");
}

long long op_twist(CechOp op) {
  if (op == CechOp::F) return 1;
  if (op == CechOp::V) return -1;
  return 0;
}

void check_shapes(CechOp op, const CechComplex& s, const CechComplex& t) {
  if (s.field != t.field) throw DomainError("Cech complexes over different fields");
  const std::int64_t p = s.field->characteristic();
  bool ok = false;
  switch (op) {
    case CechOp::R: ok = t.d == s.d && t.n + 1 == s.n; break;
    case CechOp::P: ok = t.d == s.d && t.n == s.n; break;
    case CechOp::F: ok = t.d == p * s.d && t.n + 1 == s.n; break;
    case CechOp::V: ok = s.d == p * t.d && t.n == s.n + 1; break;
  }
  if (!ok)
    throw DomainError("operator " + to_string(op) + " cannot map (d=" + std::to_string(s.d) + ", n=" +
                      std::to_string(s.n) + ") to (d=" + std::to_string(t.d) + ", n=" + std::to_string(t.n) + ")");
}

}  // namespace

InducedMap induced_map(CechOp op, const CechComplex& source, const CechComplex& target, unsigned degree) {
  check_shapes(op, source, target);
  if (degree > 1) throw DomainError("Cech cohomology lives in degrees 0 and 1");
  const FqContext& f = *source.field;
  InducedMap r;
  r.degree = degree;
  r.level = std::max(source.n, target.n);
  const auto& src_gens = degree == 0 ? source.c0 : source.c1;
  const auto& tgt_index = degree == 0 ? target.c0_index : target.c1_index;
  ChainMatrix m(f, r.level, degree == 0 ? target.c0.size() : target.c1.size(), src_gens.size());
  for (std::size_t col = 0; col < src_gens.size(); ++col) {
    const CechGen& g = src_gens[col];
    const WittLaurent image = apply_op(op, generator_element(f, source.n, g.k, g.j));
    for (const auto& [key, coef] : decompose(image, g.chart)) {
      auto it = tgt_index.find(key);
      if (it == tgt_index.end())
        throw PrecisionError("image " + key.to_string() + " of " + g.to_string() + " under " + to_string(op) +
                             " leaves the target window " + std::to_string(target.window));
      m.set(it->second, col, lift_entry(coef, r.level));
    }
  }
  r.map = SemilinearMap{std::move(m), op_twist(op)};
  if (degree == 0) {
    r.source_relations = lift_relations(source.rel0, r.level);
    r.target_relations = lift_relations(target.rel0, r.level);
    r.source_generators = lift_matrix(source.h0_generators, r.level);
    r.target_generators = lift_matrix(target.h0_generators, r.level);
    r.source_invariants = submodule_invariants(source.h0_generators, source.rel0);
    r.target_invariants = submodule_invariants(target.h0_generators, target.rel0);
  } else {
    r.source_relations = lift_relations(source.h1_relations, r.level);
    r.target_relations = lift_relations(target.h1_relations, r.level);
    r.source_invariants = chain_normal_form(source.h1_relations);
    r.target_invariants = chain_normal_form(target.h1_relations);
  }
  return r;
}

namespace {

InducedMap lifted(const InducedMap& f, unsigned level) {
  InducedMap r = f;
  r.level = level;
  r.map.matrix = lift_matrix(f.map.matrix, level);
  r.source_relations = lift_relations(f.source_relations, level);
  r.target_relations = lift_relations(f.target_relations, level);
  if (f.degree == 0) {
    r.source_generators = lift_matrix(f.source_generators, level);
    r.target_generators = lift_matrix(f.target_generators, level);
  }
  return r;
}

// Images f(v) for the test vectors of the source: all cochain generators in
// degree 1, the kernel generators in degree 0.
ChainMatrix images(const InducedMap& f) {
  const std::size_t g = f.map.matrix.cols();
  ChainMatrix out(f.map.matrix.field(), f.level, 0, f.map.matrix.rows());
  if (f.degree == 0) {
    for (std::size_t r = 0; r < f.source_generators.rows(); ++r) out.append_row(f.map.apply(f.source_generators.row_vector(r)));
  } else {
    const ChainMatrix m = f.map.matrix.transpose();
    for (std::size_t r = 0; r < g; ++r) out.append_row(m.row(r));
  }
  return out;
}

}  // namespace

InducedMap compose(const InducedMap& outer, const InducedMap& inner) {
  if (outer.degree != inner.degree) throw DomainError("composing maps of different degrees");
  if (outer.map.matrix.cols() != inner.map.matrix.rows())
    throw DomainError("composition: target of the inner map is not the source of the outer map");
  const unsigned level = std::max(outer.level, inner.level);
  const InducedMap o = lifted(outer, level), i = lifted(inner, level);
  InducedMap r;
  r.degree = outer.degree;
  r.level = level;
  r.map = o.map.compose(i.map);
  r.source_relations = i.source_relations;
  r.target_relations = o.target_relations;
  r.source_generators = i.source_generators;
  r.target_generators = o.target_generators;
  r.source_invariants = i.source_invariants;
  r.target_invariants = o.target_invariants;
  return r;
}

bool maps_agree(const InducedMap& a, const InducedMap& b) {
  if (a.degree != b.degree || a.map.twist != b.map.twist) throw DomainError("maps_agree: incomparable maps");
  if (a.map.matrix.rows() != b.map.matrix.rows() || a.map.matrix.cols() != b.map.matrix.cols())
    throw DomainError("maps_agree: shape mismatch");
  const unsigned level = std::max(a.level, b.level);
  InducedMap diff = lifted(a, level);
  const InducedMap lb = lifted(b, level);
  diff.map.matrix = diff.map.matrix - lb.map.matrix;
  const ChainMatrix none(a.map.matrix.field(), level, 0, diff.map.matrix.rows());
  return submodule_contains(diff.target_relations, images(diff), none);
}

bool is_surjective(const InducedMap& f) {
  const ChainMatrix img = images(f);
  if (f.degree == 0)
    return submodule_log_size(img, f.target_relations) == submodule_log_size(f.target_generators, f.target_relations);
  const ChainMatrix all = ChainMatrix::identity(f.map.matrix.field(), f.level, f.map.matrix.rows());
  return submodule_log_size(img, f.target_relations) == submodule_log_size(all, f.target_relations);
}

ChainMatrix induced_kernel_rows(const InducedMap& f) {
  const long long t = f.map.twist;
  if (f.degree == 1) return induced_kernel(f.map.matrix, f.target_relations).frobenius_power(-t);
  // h = G^T a for a over the kernel generators G; f(h) = M sigma^t(G)^T sigma^t(a).
  const ChainMatrix& g = f.source_generators;
  const ChainMatrix a = f.map.matrix * g.frobenius_power(t).transpose();
  const ChainMatrix coeffs = induced_kernel(a, f.target_relations).frobenius_power(-t);
  return coeffs * g;
}

VMembership v_membership_test(const WittLaurent& x, std::int64_t d) {
  const unsigned p = x.prime();
  auto valid = [&](const WittLaurent& y) {
    for (unsigned i = 0; i < y.level(); ++i)
      if (!y[i].is_zero() && y[i].highest_exponent() > ipow(p, i) * d) return false;
    return true;
  };
  VMembership r;
  r.input_valid = valid(x);
  r.shifted_valid = valid(x.verschiebung());
  return r;
}

TanakaReport tanaka_probe(const FqContext& field, unsigned s, unsigned n) {
  if (s < 1) throw DomainError("tanaka_probe needs s >= 1");
  if (n < 1) throw DomainError("tanaka_probe needs n >= 1");
  const std::int64_t p = field.characteristic();
  const std::int64_t d = -static_cast<std::int64_t>(s);
  TanakaReport rep;
  rep.s = s;
  rep.q = field.order();
  for (unsigned k = 1; k <= n; ++k) {
    TanakaLevel lv;
    lv.n = k;
    const CohomologyResult base = cohomology(field, d, k);
    lv.h0 = base.h0;
    lv.h1 = base.h1;
    if (!lv.h0.empty()) rep.h0_vanishes = false;
    const CohomologyResult tw = cohomology(field, p * d, k);
    lv.h1_twisted = tw.h1;
    const CechComplex up = CechComplex::build(field, d, k + 1, tw.window);
    const InducedMap vmap = induced_map(CechOp::V, tw.complex, up, 1);
    const InducedMap pmap = induced_map(CechOp::P, tw.complex, tw.complex, 1);
    const ChainMatrix ker_v = induced_kernel_rows(vmap);
    const ChainMatrix ker_p = lift_matrix(induced_kernel_rows(pmap), vmap.level);
    lv.ker_v = submodule_invariants(ker_v, vmap.source_relations);
    lv.ker_p = submodule_invariants(ker_p, vmap.source_relations);
    lv.kernels_coincide = submodules_equal(ker_p, ker_v, vmap.source_relations);
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

}  // namespace wittlab
