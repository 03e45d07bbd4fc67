#include "wittlab/module.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "wittlab/errors.hpp"

namespace wittlab {

std::vector<unsigned> chain_normal_form(const ChainMatrix& relations) {
  const SmithForm sf = smith_form(relations, false, false);
  std::vector<unsigned> inv;
  for (auto v : sf.pivots)
    if (v > 0) inv.push_back(v);
  for (std::size_t i = sf.rank; i < relations.cols(); ++i) inv.push_back(relations.level());
  std::sort(inv.begin(), inv.end());
  return inv;
}

FiniteChainModule::FiniteChainModule(const FqContext& f, unsigned n, std::size_t g)
    : field(&f), level(n), generators(g), relations(f, n, 0, g) {}

FiniteChainModule::FiniteChainModule(const FqContext& f, unsigned n, std::size_t g, ChainMatrix rel)
    : field(&f), level(n), generators(g), relations(std::move(rel)) {
  if (relations.cols() != g)
    throw DomainError("relation rows have " + std::to_string(relations.cols()) + " entries, expected " +
                      std::to_string(g));
  if (relations.level() != n) throw DomainError("relation entries at the wrong level");
}

FiniteChainModule FiniteChainModule::direct_sum(const FqContext& f, unsigned n, const std::vector<unsigned>& invariants) {
  FiniteChainModule m(f, n, invariants.size());
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    const unsigned e = invariants[i];
    if (e < 1 || e > n) throw DomainError("invariant " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
    if (e == n) continue;
    ChainVector r = zero_vector(f, n, invariants.size());
    r[i] = p_power(f, n, e);
    m.relations.append_row(r);
  }
  return m;
}

std::size_t FiniteChainModule::log_cardinality() const { return log_size_from_invariants(invariants()); }

bool FiniteChainModule::contains_relation(const ChainVector& v) const {
  ChainMatrix single(*field, level, 0, generators);
  single.append_row(v);
  return submodule_log_size(single, relations) == 0;
}

std::size_t log_size_from_invariants(const std::vector<unsigned>& inv) {
  std::size_t s = 0;
  for (auto e : inv) s += e;
  return s;
}

std::string invariants_to_string(const std::vector<unsigned>& inv) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < inv.size(); ++i) os << (i ? "," : "") << inv[i];
  os << "}";
  return os.str();
}

std::size_t submodule_log_size(const ChainMatrix& gens, const ChainMatrix& rel) {
  return row_span_log_size(gens.vconcat(rel)) - row_span_log_size(rel);
}

std::vector<unsigned> submodule_invariants(const ChainMatrix& gens, const ChainMatrix& rel) {
  const unsigned n = gens.level();
  // s[j] = log |p^j N|; the number of invariants > j is s[j] - s[j+1].
  std::vector<std::size_t> s(n + 2, 0);
  for (unsigned j = 0; j <= n; ++j) {
    const WittFq pj = p_power(gens.field(), n, j);
    s[j] = submodule_log_size(gens.scaled(pj), rel);
  }
  std::vector<unsigned> inv;
  for (unsigned j = 0; j < n; ++j) {
    const std::size_t above_j = s[j] - s[j + 1];
    const std::size_t above_j1 = s[j + 1] - s[j + 2];
    for (std::size_t c = above_j1; c < above_j; ++c) inv.push_back(j + 1);
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

bool submodule_contains(const ChainMatrix& big, const ChainMatrix& small, const ChainMatrix& rel) {
  return submodule_log_size(big.vconcat(small), rel) == submodule_log_size(big, rel);
}

bool submodules_equal(const ChainMatrix& a, const ChainMatrix& b, const ChainMatrix& rel) {
  const std::size_t joint = submodule_log_size(a.vconcat(b), rel);
  return joint == submodule_log_size(a, rel) && joint == submodule_log_size(b, rel);
}

ChainMatrix induced_kernel(const ChainMatrix& a, const ChainMatrix& rel_tgt) {
  if (rel_tgt.cols() != a.rows()) throw DomainError("induced_kernel: target relation width mismatch");
  const ChainMatrix b = a.hconcat(rel_tgt.transpose());
  return kernel_rows(b).select_columns(0, a.cols());
}

ChainVector SemilinearMap::apply(const ChainVector& c) const {
  ChainVector t;
  t.reserve(c.size());
  for (const auto& x : c) t.push_back(x.frobenius_power(twist));
  return matrix.apply(t);
}

SemilinearMap SemilinearMap::compose(const SemilinearMap& inner) const {
  // G sigma^tg (F sigma^tf (c)) = G sigma^tg(F) sigma^{tg+tf}(c)
  return {matrix * inner.matrix.frobenius_power(twist), twist + inner.twist};
}

SemilinearMap SemilinearMap::power(unsigned k) const {
  SemilinearMap r{ChainMatrix::identity(matrix.field(), matrix.level(), matrix.cols()), 0};
  for (unsigned i = 0; i < k; ++i) r = compose(r);
  return r;
}

bool semilinear_well_defined(const SemilinearMap& f, const ChainMatrix& rel) {
  const ChainMatrix none(rel.field(), rel.level(), 0, rel.cols());
  for (std::size_t r = 0; r < rel.rows(); ++r) {
    const auto img = ChainMatrix::from_rows(rel.field(), rel.level(), rel.cols(), {f.apply(rel.row_vector(r))});
    if (!submodule_contains(rel, img, none)) return false;
  }
  return true;
}

ChainMatrix semilinear_kernel(const SemilinearMap& f, const ChainMatrix& rel) {
  if (f.twist == 0) return induced_kernel(f.matrix, rel);
  return induced_kernel(f.matrix, rel).vconcat(rel).frobenius_power(-f.twist);
}

TruncTensorResult trunc_tensor(const FiniteChainModule& m, const SemilinearMap& v_action, unsigned n) {
  if (n < 1) throw DomainError("trunc_tensor needs n >= 1");
  if (m.level < n)
    throw PrecisionError("module given at level " + std::to_string(m.level) + ", need at least " + std::to_string(n));
  if (v_action.matrix.rows() != m.generators || v_action.matrix.cols() != m.generators)
    throw DomainError("V-action matrix does not match the generator count");
  const SemilinearMap vn = v_action.power(n);
  const ChainMatrix image_rows = vn.matrix.transpose();
  const ChainMatrix rel = m.relations.vconcat(image_rows);

  TruncTensorResult r;
  const auto inv = chain_normal_form(rel);
  for (auto e : inv)
    if (e > n)
      throw DomainError("coker(V^" + std::to_string(n) + ") is not killed by p^" + std::to_string(n) +
                        "; the V-action is inconsistent");
  r.tor0 = FiniteChainModule(*m.field, n, m.generators, rel.restrict(n));
  r.tor0_invariants = r.tor0.invariants();
  r.tor1_invariants = submodule_invariants(semilinear_kernel(vn, m.relations), m.relations);
  return r;
}

DualityElement duality_from_trunc(const OmegaTrunc& x) { return {&x.field(), x.slots()}; }

std::vector<DualityElement> dual_basis(const FqContext& field, unsigned n) {
  std::vector<DualityElement> out;
  for (unsigned i = 0; i < n; ++i) {
    DualityElement e{&field, OmegaTrunc::zero(field, n).slots()};
    e.slots[i] = WittFq::one(CoeffRing::fq(field), n - i);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<DualityElement> all_duals(const FqContext& field, unsigned n) {
  std::vector<DualityElement> out;
  for (const auto& x : all_omega_trunc(field, n)) out.push_back(duality_from_trunc(x));
  return out;
}

WittFq pairing(const DualityElement& phi, const OmegaTrunc& x) {
  if (phi.level() != x.level()) throw DomainError("pairing: level mismatch");
  const unsigned n = x.level();
  WittFq acc = WittFq::zero(CoeffRing::fq(x.field()), n);
  for (unsigned i = 0; i < n; ++i) {
    const WittFq prod = phi.slots[i] * x.slot(i);
    if (!prod.is_zero()) acc = acc + prod.zero_pad(n).mul_by_p_power(i);
  }
  return acc;
}

DualityElement dual_scale(const WittFq& a, const DualityElement& phi) {
  DualityElement r = phi;
  for (unsigned i = 0; i < phi.level(); ++i) r.slots[i] = a.restrict(phi.level() - i) * phi.slots[i];
  return r;
}

DualityElement dual_pi(const DualityElement& phi) {
  if (phi.level() < 2) throw DomainError("dual_pi needs level >= 2");
  DualityElement r{phi.field, {}};
  const unsigned n = phi.level();
  for (unsigned i = 0; i + 1 < n; ++i) r.slots.push_back(phi.slots[i].restrict(n - 1 - i));
  return r;
}

namespace {

std::size_t witt_index(const WittFq& x) {
  std::size_t idx = 0;
  const std::size_t q = x.ring().q();
  for (unsigned i = 0; i < x.level(); ++i) idx = idx * q + x[i].index();
  return idx;
}

std::size_t omega_index(const OmegaTrunc& x) {
  std::size_t idx = 0;
  const std::size_t q = x.field().order();
  for (unsigned i = 0; i < x.level(); ++i)
    for (unsigned k = 0; k < x.slot(i).level(); ++k) idx = idx * q + x.slot(i)[k].index();
  return idx;
}

}  // namespace

HomEnumeration enumerate_homs(const FqContext& field, unsigned n) {
  const std::size_t q = field.order();
  std::size_t omega_size = 1;
  for (unsigned i = 0; i < n * (n + 1) / 2; ++i) {
    omega_size *= q;
    if (omega_size > (1u << 16)) throw DomainError("omega_n too large for brute-force Hom enumeration");
  }
  std::size_t tuple_count = 1;
  for (unsigned i = 0; i < n * n; ++i) {
    tuple_count *= q;
    if (tuple_count > (1u << 16)) throw DomainError("too many candidate Hom tuples for brute force");
  }

  const CoeffRing ring = CoeffRing::fq(field);
  const auto elements = all_omega_trunc(field, n);
  std::vector<std::size_t> pos(omega_size);
  for (std::size_t k = 0; k < elements.size(); ++k) pos[omega_index(elements[k])] = k;
  const auto scalars = all_witt_vectors(field, n);

  // Addition and scalar tables of omega_n, shared by every candidate.
  std::vector<std::size_t> add_table(elements.size() * elements.size());
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = 0; b < elements.size(); ++b)
      add_table[a * elements.size() + b] = pos[omega_index(elements[a] + elements[b])];
  std::vector<std::size_t> scale_table(scalars.size() * elements.size());
  for (std::size_t s = 0; s < scalars.size(); ++s)
    for (std::size_t b = 0; b < elements.size(); ++b)
      scale_table[s * elements.size() + b] = pos[omega_index(elements[b].left_action(scalars[s]))];

  // ker(W_n -> W_{n-i}) for each slot, to test independence of the lift.
  std::vector<std::vector<WittFq>> lift_ambiguity(n);
  for (const auto& z : scalars)
    for (unsigned i = 0; i < n; ++i)
      if (z.restrict(n - i).is_zero()) lift_ambiguity[i].push_back(z);

  HomEnumeration result;
  result.candidates = tuple_count;
  for (std::size_t t = 0; t < tuple_count; ++t) {
    std::size_t code = t;
    std::vector<WittFq> y;
    for (unsigned i = 0; i < n; ++i) {
      y.push_back(scalars[code % scalars.size()]);
      code /= scalars.size();
    }
    bool ok = true;
    for (unsigned i = 0; i < n && ok; ++i)
      for (const auto& z : lift_ambiguity[i])
        if (!(z * y[i]).is_zero()) {
          ok = false;
          break;
        }
    if (!ok) continue;
    std::vector<WittFq> table;
    table.reserve(elements.size());
    for (const auto& x : elements) {
      WittFq acc = WittFq::zero(ring, n);
      for (unsigned i = 0; i < n; ++i) acc = acc + x.slot(i).zero_pad(n) * y[i];
      table.push_back(acc);
    }
    for (std::size_t a = 0; a < elements.size() && ok; ++a)
      for (std::size_t b = 0; b < elements.size(); ++b)
        if (!(table[add_table[a * elements.size() + b]] == table[a] + table[b])) {
          ok = false;
          break;
        }
    for (std::size_t s = 0; s < scalars.size() && ok; ++s)
      for (std::size_t b = 0; b < elements.size(); ++b)
        if (!(table[scale_table[s * elements.size() + b]] == scalars[s] * table[b])) {
          ok = false;
          break;
        }
    if (ok) result.maps.push_back(std::move(y));
  }

  result.decomposition_count = 1;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n - i; ++k) result.decomposition_count *= q;

  // Each accepted map must equal pairing(b, .) for exactly one b.
  const auto duals = all_duals(field, n);
  std::map<std::vector<std::size_t>, std::size_t> by_generator_images;
  const auto basis = dual_basis(field, n);
  std::vector<OmegaTrunc> slot_generators;
  for (const auto& e : basis) slot_generators.push_back(OmegaTrunc(field, e.slots));
  bool injective = true;
  for (std::size_t k = 0; k < duals.size(); ++k) {
    std::vector<std::size_t> key;
    for (const auto& g : slot_generators) key.push_back(witt_index(pairing(duals[k], g)));
    injective &= by_generator_images.emplace(key, k).second;
  }
  bool all_match = injective && result.maps.size() == duals.size();
  for (const auto& y : result.maps) {
    if (!all_match) break;
    std::vector<std::size_t> key;
    for (const auto& v : y) key.push_back(witt_index(v));
    auto it = by_generator_images.find(key);
    if (it == by_generator_images.end()) {
      all_match = false;
      break;
    }
    const auto& b = duals[it->second];
    for (const auto& x : elements) {
      WittFq direct = WittFq::zero(ring, n);
      for (unsigned i = 0; i < n; ++i) direct = direct + x.slot(i).zero_pad(n) * y[i];
      if (!(pairing(b, x) == direct)) {
        all_match = false;
        break;
      }
    }
  }
  result.matches_pairings = all_match;
  return result;
}

TransitionReport transition_check(const FqContext& field, unsigned n, std::size_t sample, unsigned long long seed) {
  if (n < 2) throw DomainError("transition_check needs n >= 2");
  TransitionReport rep;
  rep.level = n;
  auto duals = all_duals(field, n);
  const auto lower = all_duals(field, n - 1);
  const auto taus = all_omega_trunc(field, n - 1);
  rep.taus_checked = taus.size();
  const bool exhaustive = sample == 0 || sample >= duals.size();
  if (!exhaustive) {
    std::mt19937_64 rng(seed);
    std::shuffle(duals.begin(), duals.end(), rng);
    duals.resize(sample);
  }
  std::vector<OmegaTrunc> rho_taus;
  for (const auto& t : taus) rho_taus.push_back(t.rho());

  std::vector<bool> hit(lower.size(), false);
  for (const auto& w : duals) {
    ++rep.duals_checked;
    std::vector<WittFq> w_values;
    for (const auto& rt : rho_taus) w_values.push_back(pairing(w, rt));
    std::vector<std::size_t> matches;
    for (std::size_t k = 0; k < lower.size(); ++k) {
      bool ok = true;
      for (std::size_t j = 0; j < taus.size() && ok; ++j)
        ok = pairing(lower[k], taus[j]).zero_pad(n).mul_by_p() == w_values[j];
      if (ok) matches.push_back(k);
    }
    const DualityElement expected = dual_pi(w);
    auto describe = [&]() {
      std::string s = "w = (";
      for (unsigned i = 0; i < w.level(); ++i) s += (i ? ", " : "") + w.slots[i].to_string();
      return s + ")";
    };
    if (matches.size() != 1) {
      rep.unique_factorization = false;
      rep.counterexamples.push_back(describe() + ": " + std::to_string(matches.size()) + " factorizations");
    }
    for (auto k : matches) {
      hit[k] = true;
      if (!(lower[k] == expected)) {
        rep.pi_is_slotwise_restriction = false;
        rep.counterexamples.push_back(describe() + ": factorization differs from slot-wise R");
      }
    }
  }
  if (exhaustive) {
    rep.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    if (!rep.surjective) rep.counterexamples.push_back("pi on duals is not surjective");
  }
  return rep;
}

std::string TransitionReport::to_table() const {
  std::ostringstream os;
  os << "check                          | result\n";
  os << "-------------------------------+-------\n";
  os << "level n                        | " << level << "\n";
  os << "duals checked                  | " << duals_checked << "\n";
  os << "tau in omega_{n-1} per dual    | " << taus_checked << "\n";
  os << "pi equals slot-wise R          | " << (pi_is_slotwise_restriction ? "yes" : "NO") << "\n";
  os << "unique factorization           | " << (unique_factorization ? "yes" : "NO") << "\n";
  os << "pi surjective on duals         | " << (surjective ? "yes" : "NO") << "\n";
  for (const auto& c : counterexamples) os << "counterexample: " << c << "\n";
  return os.str();
}

}  // namespace wittlab
