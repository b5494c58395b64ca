#include "njk/linfty.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "njk/combinatorics.hpp"
#include "njk/matrix.hpp"

namespace njk {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

bool same_slot(const SuspendedHom& a, const SuspendedHom& b) {
  return a.codomain() == b.codomain() && a.arity() == b.arity() && a.degree() == b.degree();
}

// l_{n+1}(sh, g_1, ..., g_n) with arity(sh) = n
SuspendedHom lie_first(const SuspendedHom& sh, const std::vector<SuspendedHom>& gs) {
  const int n = static_cast<int>(gs.size());
  const int h1 = sh.degree();  // |h| + 1
  std::vector<SuspendedHom> sg;
  std::vector<int> gdeg;
  for (const auto& g : gs) {
    sg.push_back(g.suspend());
    gdeg.push_back(g.degree());
  }
  std::optional<SuspendedHom> acc;
  Permutation sigma = Permutation::identity(n);
  do {
    long long eta = static_cast<long long>(n) * h1;
    long long partial = 0;
    for (int p = 1; p <= n - 1; ++p) {
      partial += gdeg[idx(sigma(p) - 1)];
      eta += partial;
    }
    const int outer = chi_sign(sigma, gdeg) * sign_pow(eta);
    long long suspended_sum = 0;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) suspended_sum += gdeg[idx(sigma(k) - 1)] + 1;
      const int xi = sign_pow(static_cast<long long>(h1) * suspended_sum + k);
      std::vector<SuspendedHom> tail;
      for (int i = k + 1; i <= n; ++i) tail.push_back(sg[idx(sigma(i) - 1)]);
      SuspendedHom term = shuffle_brace_or_zero(sh, tail);
      for (int i = k; i >= 1; --i) term = shuffle_brace_or_zero(sg[idx(sigma(i) - 1)], {term});
      term = term.scaled(Rational(outer * xi));
      acc = acc ? *acc + term : term;
    }
  } while (std::next_permutation(sigma.images.begin(), sigma.images.end()));
  return acc->desuspend();
}

}  // namespace

NjlElement NjlElement::of(const SuspendedHom& h) {
  NjlElement x;
  x.add(h);
  return x;
}

void NjlElement::add(const SuspendedHom& h) {
  if (h.is_zero()) return;
  for (auto it = parts.begin(); it != parts.end(); ++it) {
    if (!same_slot(*it, h)) continue;
    *it = *it + h;
    if (it->is_zero()) parts.erase(it);
    return;
  }
  parts.push_back(h);
}

const SuspendedHom* NjlElement::find(Codomain c, int arity) const {
  for (const auto& p : parts)
    if (p.codomain() == c && p.arity() == arity) return &p;
  return nullptr;
}

NjlElement NjlElement::operator+(const NjlElement& o) const {
  NjlElement r = *this;
  for (const auto& p : o.parts) r.add(p);
  return r;
}

NjlElement NjlElement::operator-(const NjlElement& o) const { return *this + o.scaled(Rational(-1)); }

NjlElement NjlElement::scaled(const Rational& c) const {
  NjlElement r;
  if (c == 0) return r;
  for (const auto& p : parts) r.parts.push_back(p.scaled(c));
  return r;
}

bool operator==(const NjlElement& a, const NjlElement& b) { return (a - b).is_zero(); }

std::optional<SuspendedHom> njl_operation(const std::vector<SuspendedHom>& xs) {
  const int n = static_cast<int>(xs.size());
  int lie_pos = -1, lie_count = 0;
  for (int i = 0; i < n; ++i)
    if (xs[idx(i)].codomain() == Codomain::SV) {
      lie_pos = i;
      ++lie_count;
    }
  if (n == 2 && lie_count == 2) return rn_bracket(xs[0], xs[1]);
  if (lie_count != 1 || xs[idx(lie_pos)].arity() != n - 1) return std::nullopt;
  const SuspendedHom& sh = xs[idx(lie_pos)];
  std::vector<SuspendedHom> gs;
  long long before = 0;
  for (int i = 0; i < n; ++i) {
    if (i == lie_pos) continue;
    if (i < lie_pos) before += xs[idx(i)].degree();
    gs.push_back(xs[idx(i)]);
  }
  SuspendedHom r = lie_first(sh, gs);
  const int sign = sign_pow(static_cast<long long>(sh.degree()) * before + lie_pos);
  return sign > 0 ? r : r.scaled(Rational(-1));
}

NjlElement njl_operation(const std::vector<NjlElement>& xs) {
  NjlElement out;
  std::vector<SuspendedHom> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == xs.size()) {
      if (auto r = njl_operation(pick)) out.add(*r);
      return;
    }
    for (const auto& p : xs[pos].parts) {
      pick.push_back(p);
      rec(pos + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

NjlElement njl_twisted_operation(const NjlElement& a, const std::vector<NjlElement>& xs, int max_arity) {
  const int n = static_cast<int>(xs.size());
  NjlElement out;
  for (int i = 0; n + i <= max_arity; ++i) {
    std::vector<NjlElement> args(idx(i), a);
    args.insert(args.end(), xs.begin(), xs.end());
    long long e = static_cast<long long>(i) * n + static_cast<long long>(i) * (i - 1) / 2;
    out = out + njl_operation(args).scaled(Rational(sign_pow(e)) / factorial(i));
  }
  return out;
}

NjlElement njl_maurer_cartan(const NjlElement& a, int max_arity) {
  NjlElement out;
  for (int n = 1; n <= max_arity; ++n) {
    Rational c = Rational(sign_pow(static_cast<long long>(n) * (n - 1) / 2)) / factorial(n);
    out = out + njl_operation(std::vector<NjlElement>(idx(n), a)).scaled(c);
  }
  return out;
}

// ---------------------------------------------------------------------------

LInftyAlgebra::LInftyAlgebra(std::vector<int> degrees, int max_arity, BasisOp op)
    : degrees_(std::move(degrees)), max_arity_(max_arity), op_(std::move(op)), cache_(std::make_shared<Cache>()) {}

Vec LInftyAlgebra::l(std::vector<int> basis) const {
  const std::size_t d = degrees_.size();
  const int n = static_cast<int>(basis.size());
  if (n == 0 || n > max_arity_) return zero_vec(d);
  int sign = 1;
  for (std::size_t i = 1; i < basis.size(); ++i)
    for (std::size_t j = i; j > 0 && basis[j] < basis[j - 1]; --j) {
      if ((degree(basis[j]) * degree(basis[j - 1])) % 2 == 0) sign = -sign;
      std::swap(basis[j], basis[j - 1]);
    }
  for (std::size_t i = 1; i < basis.size(); ++i)
    if (basis[i] == basis[i - 1] && degree(basis[i]) % 2 == 0) return zero_vec(d);
  Vec v;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->values.find(basis);
    if (it != cache_->values.end()) v = it->second;
  }
  if (v.empty()) {
    v = op_(basis);
    if (v.size() != d) throw std::logic_error("LInftyAlgebra: operation returned a vector of wrong length");
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->values.emplace(basis, v);
  }
  return sign > 0 ? v : njk::scaled(v, Rational(-1));
}

Vec LInftyAlgebra::l(const std::vector<Vec>& args) const {
  Vec out = zero_vec(degrees_.size());
  if (args.empty() || static_cast<int>(args.size()) > max_arity_) return out;
  std::vector<int> tuple;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t pos, const Rational& c) {
    if (pos == args.size()) {
      axpy(out, c, l(tuple));
      return;
    }
    for (std::size_t k = 0; k < args[pos].size(); ++k) {
      if (args[pos][k] == 0) continue;
      tuple.push_back(static_cast<int>(k));
      rec(pos + 1, c * args[pos][k]);
      tuple.pop_back();
    }
  };
  rec(0, Rational(1));
  return out;
}

Vec LInftyAlgebra::maurer_cartan(const Vec& a) const {
  Vec out = zero_vec(degrees_.size());
  for (int n = 1; n <= max_arity_; ++n) {
    Rational c = Rational(sign_pow(static_cast<long long>(n) * (n - 1) / 2)) / factorial(n);
    axpy(out, c, l(std::vector<Vec>(idx(n), a)));
  }
  return out;
}

LInftyAlgebra LInftyAlgebra::twist(const Vec& a) const {
  if (a.size() != degrees_.size()) throw std::invalid_argument("twist: element of wrong length");
  LInftyAlgebra base = *this;
  const std::size_t d = degrees_.size();
  auto op = [base, a, d](const std::vector<int>& x) {
    const int n = static_cast<int>(x.size());
    Vec out = zero_vec(d);
    for (int i = 0; n + i <= base.max_arity(); ++i) {
      std::vector<Vec> args(idx(i), a);
      for (int b : x) args.push_back(basis_vec(d, idx(b)));
      long long e = static_cast<long long>(i) * n + static_cast<long long>(i) * (i - 1) / 2;
      axpy(out, Rational(sign_pow(e)) / factorial(i), base.l(args));
    }
    return out;
  };
  return LInftyAlgebra(degrees_, max_arity_, op);
}

namespace {

std::vector<std::vector<int>> sorted_tuples(const LInftyAlgebra& alg, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> t;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(t.size()) == n) {
      out.push_back(t);
      return;
    }
    for (int i = from; i < alg.dim(); ++i) {
      t.push_back(i);
      rec(alg.degree(i) % 2 != 0 ? i : i + 1);
      t.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

LInftyReport linfty_validate(const LInftyAlgebra& alg, int n_max) {
  LInftyReport rep;
  const std::size_t d = static_cast<std::size_t>(alg.dim());
  auto fail = [&](std::string why, std::vector<int> w, int n) {
    rep.valid = false;
    rep.detail = std::move(why);
    rep.witness = std::move(w);
    rep.arity = n;
    return rep;
  };
  for (int n = 1; n <= std::min(n_max, alg.max_arity()); ++n) {
    for (const auto& t : sorted_tuples(alg, n)) {
      Vec base = alg.raw(t);
      int deg = n - 2;
      for (int b : t) deg += alg.degree(b);
      for (std::size_t k = 0; k < d; ++k)
        if (base[k] != 0 && alg.degree(static_cast<int>(k)) != deg) return fail("operation has the wrong degree", t, n);
      if (n > 4) continue;
      std::vector<int> degs;
      for (int b : t) degs.push_back(alg.degree(b));
      Permutation p = Permutation::identity(n);
      while (std::next_permutation(p.images.begin(), p.images.end())) {
        std::vector<int> permuted;
        for (int i = 1; i <= n; ++i) permuted.push_back(t[idx(p(i) - 1)]);
        // l(x_p(1), ..., x_p(n)) = chi(p) l(x_1, ..., x_n)
        if (alg.raw(permuted) != njk::scaled(base, Rational(chi_sign(p, degs))))
          return fail("operation is not graded antisymmetric", permuted, n);
      }
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    for (const auto& t : sorted_tuples(alg, n)) {
      std::vector<int> degs;
      for (int b : t) degs.push_back(alg.degree(b));
      Vec total = zero_vec(d);
      for (int i = 1; i <= n; ++i) {
        if (i > alg.max_arity() || n - i + 1 > alg.max_arity()) continue;
        for (const auto& s : enumerate_shuffles({i, n - i})) {
          std::vector<int> first;
          for (int k = 1; k <= i; ++k) first.push_back(t[idx(s(k) - 1)]);
          Vec inner = alg.l(first);
          if (is_zero(inner)) continue;
          std::vector<Vec> args{inner};
          for (int k = i + 1; k <= n; ++k) args.push_back(basis_vec(d, idx(t[idx(s(k) - 1)])));
          long long e = static_cast<long long>(i) * (n - i);
          axpy(total, Rational(chi_sign(s, degs) * sign_pow(e)), alg.l(args));
        }
      }
      if (!is_zero(total)) return fail("generalized Jacobi identity fails", t, n);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

NjlBasis::NjlBasis(int dim, bool reduced) : dim_(dim), reduced_(reduced) {
  if (dim < 0) throw std::invalid_argument("NjlBasis: negative dimension");
  for (Codomain c : {Codomain::SV, Codomain::V})
    for (int a = reduced ? 1 : 0; a <= dim; ++a) {
      block_start_[{static_cast<int>(c), a}] = static_cast<int>(entries_.size());
      for (const auto& key : combinations(dim, a))
        for (int o = 0; o < dim; ++o) entries_.push_back({c, key, o});
    }
}

int NjlBasis::degree(int i) const {
  const Entry& e = entries_[idx(i)];
  const int a = static_cast<int>(e.key.size());
  return e.codomain == Codomain::SV ? 1 - a : -a;
}

std::vector<int> NjlBasis::degrees() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) out.push_back(degree(i));
  return out;
}

std::vector<int> NjlBasis::block(Codomain c, int arity) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (entries_[idx(i)].codomain == c && static_cast<int>(entries_[idx(i)].key.size()) == arity) out.push_back(i);
  return out;
}

SuspendedHom NjlBasis::element(int i) const {
  const Entry& e = entries_[idx(i)];
  SuspendedHom h(GradedSpace::ungraded(dim_), static_cast<int>(e.key.size()), e.codomain, degree(i));
  h.add(e.key, basis_vec(idx(dim_), idx(e.out)));
  return h;
}

NjlElement NjlBasis::to_element(const Vec& coords) const {
  if (coords.size() != entries_.size()) throw std::invalid_argument("NjlBasis: wrong coordinate length");
  NjlElement x;
  for (int i = 0; i < size(); ++i)
    if (coords[idx(i)] != 0) x.add(element(i).scaled(coords[idx(i)]));
  return x;
}

Vec NjlBasis::coords(const NjlElement& x) const {
  Vec out = zero_vec(entries_.size());
  for (const auto& p : x.parts) {
    if (p.dim() != dim_) throw std::invalid_argument("NjlBasis: element over a different space");
    auto it = block_start_.find({static_cast<int>(p.codomain()), p.arity()});
    if (it == block_start_.end()) throw std::invalid_argument("NjlBasis: component outside the basis");
    for (const auto& [key, v] : p.values()) {
      const int base = it->second + static_cast<int>(combination_index(key, dim_)) * dim_;
      for (int o = 0; o < dim_; ++o) out[idx(base + o)] += v[idx(o)];
    }
  }
  return out;
}

LInftyAlgebra njl_linfty(const NjlBasis& basis) {
  auto op = [basis](const std::vector<int>& t) {
    std::vector<SuspendedHom> xs;
    for (int b : t) xs.push_back(basis.element(b));
    auto r = njl_operation(xs);
    if (!r) return zero_vec(idx(basis.size()));
    return basis.coords(NjlElement::of(*r));
  };
  return LInftyAlgebra(basis.degrees(), std::max(2, basis.dim_v() + 1), op);
}

LinearComplex njl_l1_complex(const LInftyAlgebra& alg, const NjlBasis& basis) {
  if (alg.dim() != basis.size()) throw std::invalid_argument("njl_l1_complex: algebra and basis differ in size");
  const int top = basis.dim_v() + 1;
  std::vector<std::vector<int>> blocks;
  for (int n = 0; n <= top; ++n) {
    std::vector<int> b;
    for (int i = 0; i < basis.size(); ++i)
      if (basis.degree(i) == 1 - n) b.push_back(i);
    blocks.push_back(b);
  }
  LinearComplex cx;
  for (const auto& b : blocks) cx.dims.push_back(b.size());
  const std::size_t N = idx(basis.size());
  for (int n = 0; n < top; ++n) {
    const auto& in = blocks[idx(n)];
    const auto& out = blocks[idx(n + 1)];
    std::vector<int> where(N, -1);
    for (std::size_t k = 0; k < out.size(); ++k) where[idx(out[k])] = static_cast<int>(k);
    SparseMatrix m(out.size(), in.size());
    for (std::size_t j = 0; j < in.size(); ++j) {
      Vec img = alg.l(std::vector<Vec>{basis_vec(N, idx(in[j]))});
      for (std::size_t i = 0; i < N; ++i) {
        if (img[i] == 0) continue;
        if (where[i] < 0) throw std::logic_error("njl_l1_complex: l_1 does not have degree -1");
        m.set(idx(where[i]), j, img[i]);
      }
    }
    cx.d.push_back(std::move(m));
  }
  return cx;
}

NjlElement njl_embed(const PairCochain& fg) {
  const int n = fg.degree();
  const int a = sign_pow(static_cast<long long>(n) * (n - 1) / 2);
  const int b = sign_pow(n) * a;
  NjlElement x = NjlElement::of(to_suspended(fg.lie, Codomain::SV).scaled(Rational(a)));
  if (fg.njo) x.add(to_suspended(*fg.njo, Codomain::V).scaled(Rational(b)));
  return x;
}

// ---------------------------------------------------------------------------

MaurerCartanCandidate MaurerCartanCandidate::from_nijenhuis(const LieAlgebra& L, const Matrix& P) {
  if (static_cast<int>(P.size()) != L.dim) throw std::invalid_argument("MC candidate: operator has wrong size");
  MaurerCartanCandidate c;
  c.lie.emplace(2, nu_from_lie(L));
  c.njo.emplace(1, tau_from_operator(P));
  return c;
}

bool McResidual::zero() const {
  for (const auto& [n, h] : lie)
    if (!h.is_zero()) return false;
  for (const auto& [n, h] : njo)
    if (!h.is_zero()) return false;
  return true;
}

std::vector<int> McResidual::nonzero_lie_arities() const {
  std::vector<int> out;
  for (const auto& [n, h] : lie)
    if (!h.is_zero()) out.push_back(n);
  return out;
}

std::vector<int> McResidual::nonzero_njo_arities() const {
  std::vector<int> out;
  for (const auto& [n, h] : njo)
    if (!h.is_zero()) out.push_back(n);
  return out;
}

McResidual mc_residual(const MaurerCartanCandidate& cand, int n_max) {
  if (n_max < 1) throw std::invalid_argument("mc_residual: n_max must be positive");
  std::map<int, SuspendedHom> b, R;
  std::optional<GradedSpace> space;
  auto check = [&](const std::map<int, SuspendedHom>& in, Codomain c, std::map<int, SuspendedHom>& out) {
    for (const auto& [a, h] : in) {
      if (h.arity() != a || h.codomain() != c || h.degree() != -1)
        throw std::invalid_argument("mc_residual: component of arity " + std::to_string(a) +
                                    " is not a degree -1 map of that arity");
      if (space && !(*space == h.space())) throw std::invalid_argument("mc_residual: components on different spaces");
      space = h.space();
      if (a >= 1 && a <= n_max) out.emplace(a, h);
    }
  };
  check(cand.lie, Codomain::SV, b);
  check(cand.njo, Codomain::V, R);
  McResidual res;
  if (!space) return res;

  for (int n = 1; n <= 2 * n_max - 1; ++n) {
    std::optional<SuspendedHom> acc;
    for (int i = 1; i <= n; ++i) {
      auto outer = b.find(n - i + 1), inner = b.find(i);
      if (outer == b.end() || inner == b.end()) continue;
      SuspendedHom t = shuffle_brace(outer->second, {inner->second});
      acc = acc ? *acc + t : t;
    }
    if (acc) res.lie.emplace(n, *acc);
  }

  std::map<int, SuspendedHom> sR;
  for (const auto& [a, h] : R) sR.emplace(a, h.suspend());
  std::map<int, std::optional<SuspendedHom>> njo;
  std::vector<int> parts;
  std::function<void(int)> rec = [&](int total) {
    const int p = static_cast<int>(parts.size());
    if (p >= 1 && b.count(p)) {
      for (int t = 0; t <= p; ++t) {
        std::vector<SuspendedHom> tail;
        for (int i = t; i < p; ++i) tail.push_back(sR.at(parts[idx(i)]));
        SuspendedHom term = shuffle_brace_or_zero(b.at(p), tail);
        for (int i = t - 1; i >= 0; --i) term = shuffle_brace_or_zero(sR.at(parts[idx(i)]), {term});
        if (t % 2) term = term.scaled(Rational(-1));
        auto& slot = njo[total];
        slot = slot ? *slot + term : term;
      }
    }
    if (p == n_max) return;
    for (const auto& [a, h] : sR) {
      parts.push_back(a);
      rec(total + a);
      parts.pop_back();
    }
  };
  rec(0);
  for (auto& [n, h] : njo)
    if (h) res.njo.emplace(n, h->desuspend());
  return res;
}

// ---------------------------------------------------------------------------

NjoGradedLie::NjoGradedLie(SuspendedHom nu) : nu_(std::move(nu)) {
  if (nu_.codomain() != Codomain::SV || nu_.arity() != 2)
    throw std::invalid_argument("NjoGradedLie: nu must be a binary map into sV");
  if (!shuffle_brace(nu_, {nu_}).is_zero()) throw std::domain_error("NjoGradedLie: nu{nu} is not zero");
}

SuspendedHom NjoGradedLie::bracket(const SuspendedHom& f, const SuspendedHom& g) const {
  if (f.codomain() != Codomain::V || g.codomain() != Codomain::V)
    throw std::invalid_argument("NjoGradedLie: arguments must take values in V");
  return *njl_operation({nu_, f, g});
}

SuspendedHom NjoGradedLie::maurer_cartan(const SuspendedHom& t) const {
  return bracket(t, t).scaled(Rational(-1, 2));
}

SuspendedHom NjoGradedLie::twisted_differential(const SuspendedHom& b, const SuspendedHom& f) const {
  return bracket(b, f).scaled(Rational(-1));
}

}  // namespace njk
