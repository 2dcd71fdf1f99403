/*
   Copyright 2026 The p1h Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "p1h/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

namespace p1h::oracle {

std::string target_name(Target t) {
  switch (t) {
    case Target::RatFun:
      return "ratfun";
    case Target::SymMat:
      return "symmat";
    case Target::Pd:
      return "pd";
    case Target::Unpointed:
      return "unpointed";
  }
  return "";
}

Target parse_target(const std::string& s) {
  if (s == "ratfun") return Target::RatFun;
  if (s == "symmat") return Target::SymMat;
  if (s == "pd") return Target::Pd;
  if (s == "unpointed") return Target::Unpointed;
  throw Error("unknown oracle target '" + s + "'");
}

int EnumSpec::slots() const {
  switch (target) {
    case Target::RatFun:
      return 2 * n;
    case Target::SymMat:
      return n * (n + 1) / 2;
    case Target::Pd:
      return n * (1 + d);
    case Target::Unpointed:
      return 2 * n + 2;
  }
  return 0;
}

namespace {

// q^e, saturating at UINT64_MAX.
std::uint64_t ipow(std::uint64_t q, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > UINT64_MAX / q) return UINT64_MAX;
    r *= q;
  }
  return r;
}

}  // namespace

std::uint64_t EnumSpec::point_space() const { return ipow(q, slots()); }
std::uint64_t EnumSpec::candidate_count() const { return ipow(q, slots() * (degree_bound() + 1)); }

void validate(const EnumSpec& s) {
  if (s.q != 2 && s.q != 3 && s.q != 5 && s.q != 7) throw Error("oracle field size must be 2, 3, 5 or 7");
  if (s.n < 1 || s.n > 4) throw Error("oracle degree must be between 1 and 4");
  if (s.degree_bound() > 3) throw Error("oracle T-degree bound must be at most 3");
  if (s.target == Target::Pd && (s.d < 1 || s.d > 3)) throw Error("oracle d must be between 1 and 3");
  if (s.workers < 1) throw Error("workers must be positive");
  const std::uint64_t c = s.candidate_count();
  if (c > kMaxCandidates)
    throw Error("oracle spec too large: " + (c == UINT64_MAX ? std::string("overflow") : std::to_string(c)) +
                " candidate paths (limit " + std::to_string(kMaxCandidates) + ")");
}

namespace {

std::vector<unsigned> digits(const EnumSpec& s, std::uint64_t index) {
  std::vector<unsigned> out(static_cast<std::size_t>(s.slots()));
  for (auto& x : out) {
    x = static_cast<unsigned>(index % s.q);
    index /= s.q;
  }
  return out;
}

KPoly coeff_poly(Field f, const std::vector<unsigned>& v, std::size_t from, std::size_t count, bool monic) {
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < count; ++i) c.emplace_back(f, static_cast<long>(v[from + i]));
  if (monic) c.push_back(Scalar::one(f));
  return KPoly(f, c);
}

}  // namespace

RatFun ratfun_at(const EnumSpec& s, std::uint64_t index) {
  const Field f = Field::prime(s.q);
  const auto v = digits(s, index);
  const auto n = static_cast<std::size_t>(s.n);
  return RatFun::make(coeff_poly(f, v, 0, n, true), coeff_poly(f, v, n, n, false));
}

UnpointedRat unpointed_at(const EnumSpec& s, std::uint64_t index) {
  const Field f = Field::prime(s.q);
  const auto v = digits(s, index);
  const auto n = static_cast<std::size_t>(s.n);
  return UnpointedRat::make(coeff_poly(f, v, 0, n + 1, false), coeff_poly(f, v, n + 1, n + 1, false), s.n);
}

Matrix<Scalar> symmat_at(const EnumSpec& s, std::uint64_t index) {
  const Field f = Field::prime(s.q);
  const auto v = digits(s, index);
  Matrix<Scalar> M(f, s.n, s.n);
  std::size_t k = 0;
  for (int i = 0; i < s.n; ++i)
    for (int j = i; j < s.n; ++j) {
      M(i, j) = M(j, i) = Scalar(f, static_cast<long>(v[k++]));
    }
  return M;
}

PdPoint pd_at(const EnumSpec& s, std::uint64_t index) {
  const Field f = Field::prime(s.q);
  const auto v = digits(s, index);
  const auto n = static_cast<std::size_t>(s.n);
  std::vector<KPoly> bs;
  for (int j = 0; j < s.d; ++j) bs.push_back(coeff_poly(f, v, n * static_cast<std::size_t>(1 + j), n, false));
  return PdPoint::make(coeff_poly(f, v, 0, n, true), bs);
}

std::string point_text(const EnumSpec& s, std::uint64_t index) {
  switch (s.target) {
    case Target::RatFun: {
      const RatFun r = ratfun_at(s, index);
      return "(" + to_string(r.A()) + ")/(" + to_string(r.B()) + ")";
    }
    case Target::Unpointed: {
      const UnpointedRat u = unpointed_at(s, index);
      return "[" + to_string(u.A()) + " : " + to_string(u.B()) + "]";
    }
    case Target::SymMat: {
      const Matrix<Scalar> M = symmat_at(s, index);
      std::string out = "[";
      for (int i = 0; i < s.n; ++i) {
        out += i ? ", [" : "[";
        for (int j = 0; j < s.n; ++j) out += (j ? ", " : "") + M(i, j).str();
        out += "]";
      }
      return out + "]";
    }
    case Target::Pd: {
      const PdPoint p = pd_at(s, index);
      std::string out = "(" + to_string(p.A);
      for (const auto& b : p.B) out += "; " + to_string(b);
      return out + ")";
    }
  }
  return "";
}

std::string point_invariant(const EnumSpec& s, std::uint64_t index) {
  switch (s.target) {
    case Target::RatFun:
      return pointed_invariant(ratfun_at(s, index)).key();
    case Target::Unpointed:
      return unpointed_invariant(unpointed_at(s, index)).key();
    case Target::SymMat: {
      const Matrix<Scalar> M = symmat_at(s, index);
      return "det" + determinant(M).str() + "|" + stable_invariant(M).key();
    }
    case Target::Pd:
      return "n" + std::to_string(s.n);
  }
  return "";
}

namespace {

// Dense polynomials over F_q in T, lowest degree first, no trailing zeros.
class ZqArith {
 public:
  using P = std::vector<int>;

  explicit ZqArith(unsigned q) : q_(static_cast<int>(q)), inv_(q, 0) {
    for (int a = 1; a < q_; ++a)
      for (int b = 1; b < q_; ++b)
        if (a * b % q_ == 1) inv_[static_cast<std::size_t>(a)] = b;
  }

  static void trim(P& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  P sub(const P& a, const P& b) const {
    P r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] - b[i] + q_) % q_;
    trim(r);
    return r;
  }

  P mul(const P& a, const P& b) const {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % q_;
    trim(r);
    return r;
  }

  // a / b, assuming b divides a.
  P div_exact(P a, const P& b) const {
    if (a.empty()) return {};
    const int lb = inv_[static_cast<std::size_t>(b.back())];
    P quo(a.size() - b.size() + 1, 0);
    for (std::size_t k = quo.size(); k-- > 0;) {
      const int c = a[k + b.size() - 1] * lb % q_;
      quo[k] = c;
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = ((a[k + j] - c * b[j]) % q_ + q_) % q_;
    }
    trim(quo);
    return quo;
  }

  // Bareiss elimination; returns det(m).
  P det(std::vector<std::vector<P>> m) const {
    const std::size_t n = m.size();
    P prev{1};
    bool neg = false;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      while (piv < n && m[piv][k].empty()) ++piv;
      if (piv == n) return {};
      if (piv != k) {
        std::swap(m[piv], m[k]);
        neg = !neg;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j)
          m[i][j] = div_exact(sub(mul(m[i][j], m[k][k]), mul(m[i][k], m[k][j])), prev);
        m[i][k].clear();
      }
      prev = m[k][k];
    }
    P r = m[n - 1][n - 1];
    if (neg)
      for (auto& c : r) c = (q_ - c) % q_;
    return r;
  }

 private:
  int q_;
  std::vector<int> inv_;
};

std::vector<std::vector<ZqArith::P>> sylvester(const std::vector<ZqArith::P>& a, const std::vector<ZqArith::P>& b,
                                               std::size_t n) {
  // a, b have formal degree n (n + 1 coefficients each).
  std::vector<std::vector<ZqArith::P>> m(2 * n, std::vector<ZqArith::P>(2 * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= n; ++k) {
      m[i][i + k] = a[n - k];
      m[n + i][i + k] = b[n - k];
    }
  return m;
}

struct Tables {
  EnumSpec spec;
  int m = 0;
  std::uint64_t space = 0;
  std::vector<std::uint8_t> value;     // 0 marks an invalid point
  std::vector<std::uint64_t> canon;    // canonical representative
  std::vector<std::uint32_t> inv_id;   // invariant id of canonical points
  std::vector<std::string> inv_names;
};

Tables build_tables(const EnumSpec& s) {
  Tables t{s, s.slots(), s.point_space(), {}, {}, {}, {}};
  const Field f = Field::prime(s.q);
  t.value.assign(t.space, 0);
  t.canon.resize(t.space);
  t.inv_id.assign(t.space, 0);
  const auto n = static_cast<std::size_t>(s.n);
  std::map<std::string, std::uint32_t> ids;
  for (std::uint64_t i = 0; i < t.space; ++i) {
    t.canon[i] = i;
    const auto v = digits(s, i);
    try {
      switch (s.target) {
        case Target::RatFun: {
          const RatFun r = ratfun_at(s, i);
          t.value[i] = static_cast<std::uint8_t>(r.resultant().residue());
          break;
        }
        case Target::Unpointed: {
          const Scalar r = resultant_nn(coeff_poly(f, v, 0, n + 1, false), coeff_poly(f, v, n + 1, n + 1, false), s.n);
          t.value[i] = static_cast<std::uint8_t>(r.residue());
          if (r.is_zero()) break;
          // Scale so that the first nonzero coordinate is 1.
          std::size_t k = 0;
          while (v[k] == 0) ++k;
          const Scalar c = Scalar(f, static_cast<long>(v[k])).inverse();
          std::uint64_t idx = 0;
          for (std::size_t j = v.size(); j-- > 0;) idx = idx * s.q + (Scalar(f, static_cast<long>(v[j])) * c).residue();
          t.canon[i] = idx;
          break;
        }
        case Target::SymMat:
          t.value[i] = static_cast<std::uint8_t>(determinant(symmat_at(s, i)).residue());
          break;
        case Target::Pd:
          (void)pd_at(s, i);
          t.value[i] = 1;
          break;
      }
    } catch (const Error&) {
      t.value[i] = 0;
    }
  }
  for (std::uint64_t i = 0; i < t.space; ++i) {
    if (!t.value[i] || t.canon[i] != i) continue;
    auto [it, fresh] = ids.emplace(point_invariant(s, i), static_cast<std::uint32_t>(ids.size()));
    t.inv_id[i] = it->second;
  }
  t.inv_names.resize(ids.size());
  for (const auto& [k, v] : ids) t.inv_names[v] = k;
  return t;
}

struct UnionFind {
  std::vector<std::uint64_t> parent;
  explicit UnionFind(std::uint64_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::uint64_t find(std::uint64_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // smaller index becomes the root
  }
};

struct WorkerResult {
  UnionFind uf;
  std::uint64_t edges = 0, unsound = 0;
};

class ExactCheck {
 public:
  ExactCheck(const EnumSpec& s) : s_(s), z_(s.q), width_(static_cast<std::size_t>(s.degree_bound() + 1)) {}

  bool operator()(const std::vector<std::uint32_t>& codes) const {
    std::vector<ZqArith::P> c;
    c.reserve(codes.size());
    for (auto code : codes) c.push_back(decode(code));
    const auto n = static_cast<std::size_t>(s_.n);
    switch (s_.target) {
      case Target::RatFun: {
        std::vector<ZqArith::P> a(c.begin(), c.begin() + static_cast<long>(n));
        a.push_back({1});
        std::vector<ZqArith::P> b(c.begin() + static_cast<long>(n), c.end());
        b.push_back({});
        return z_.det(sylvester(a, b, n)).size() == 1;
      }
      case Target::Unpointed: {
        std::vector<ZqArith::P> a(c.begin(), c.begin() + static_cast<long>(n + 1));
        std::vector<ZqArith::P> b(c.begin() + static_cast<long>(n + 1), c.end());
        return z_.det(sylvester(a, b, n)).size() == 1;
      }
      case Target::SymMat: {
        std::vector<std::vector<ZqArith::P>> m(n, std::vector<ZqArith::P>(n));
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = c[k++];
        return z_.det(m).size() == 1;
      }
      case Target::Pd: {
        const Field f = Field::prime(s_.q);
        auto lift = [&](std::size_t from, std::size_t count, bool monic) {
          std::vector<KPoly> v;
          for (std::size_t i = 0; i < count; ++i) v.push_back(to_kpoly(f, c[from + i]));
          if (monic) v.push_back(KPoly::one(f));
          return KTPoly(f, v);
        };
        std::vector<KTPoly> bs;
        for (int j = 0; j < s_.d; ++j) bs.push_back(lift(n * static_cast<std::size_t>(1 + j), n, false));
        return unimodular_cofactors(lift(0, n, true), bs).has_value();
      }
    }
    return false;
  }

 private:
  ZqArith::P decode(std::uint32_t code) const {
    ZqArith::P p(width_);
    for (auto& x : p) {
      x = static_cast<int>(code % s_.q);
      code /= s_.q;
    }
    ZqArith::trim(p);
    return p;
  }

  static KPoly to_kpoly(Field f, const ZqArith::P& p) {
    std::vector<Scalar> v;
    for (int x : p) v.emplace_back(f, static_cast<long>(x));
    return KPoly(f, v);
  }

  EnumSpec s_;
  ZqArith z_;
  std::size_t width_;
};

void run_worker(const Tables& t, int w, WorkerResult& out) {
  const EnumSpec& s = t.spec;
  const unsigned q = s.q;
  const auto C = static_cast<std::uint32_t>(ipow(q, s.degree_bound() + 1));
  const auto m = static_cast<std::size_t>(t.m);
  // contrib[slot][code][t] = value of the code polynomial at t, times q^slot.
  std::vector<std::vector<std::vector<std::uint64_t>>> contrib(m, std::vector<std::vector<std::uint64_t>>(C, std::vector<std::uint64_t>(q)));
  for (std::size_t sl = 0; sl < m; ++sl) {
    const std::uint64_t base = ipow(q, static_cast<int>(sl));
    for (std::uint32_t code = 0; code < C; ++code)
      for (unsigned x = 0; x < q; ++x) {
        std::uint64_t val = 0, pw = 1;
        for (std::uint32_t c = code; c; c /= q) {
          val = (val + (c % q) * pw) % q;
          pw = pw * x % q;
        }
        contrib[sl][code][x] = val * base;
      }
  }
  const ExactCheck exact(s);
  std::vector<std::uint32_t> codes(m, 0);
  std::vector<std::uint64_t> idx(q);
  for (std::uint32_t top = static_cast<std::uint32_t>(w); top < C; top += static_cast<std::uint32_t>(s.workers)) {
    std::fill(codes.begin(), codes.end(), 0);
    codes[m - 1] = top;
    for (unsigned x = 0; x < q; ++x) idx[x] = contrib[m - 1][top][x];
    for (;;) {
      const std::uint8_t v0 = t.value[idx[0]];
      bool ok = v0 != 0;
      for (unsigned x = 1; ok && x < q; ++x) ok = t.value[idx[x]] == v0;
      if (ok && exact(codes)) {
        const std::uint64_t a = t.canon[idx[0]], b = t.canon[idx[1]];
        ++out.edges;
        if (t.inv_id[a] != t.inv_id[b]) ++out.unsound;
        out.uf.unite(a, b);
      }
      std::size_t sl = 0;
      for (; sl + 1 < m; ++sl) {
        const std::uint32_t old = codes[sl];
        const auto& from = contrib[sl][old];
        if (old + 1 < C) {
          const auto& to = contrib[sl][old + 1];
          for (unsigned x = 0; x < q; ++x) idx[x] = idx[x] - from[x] + to[x];
          codes[sl] = old + 1;
          break;
        }
        for (unsigned x = 0; x < q; ++x) idx[x] -= from[x];
        codes[sl] = 0;
      }
      if (sl + 1 >= m) break;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> enumerate_points(const EnumSpec& s) {
  validate(s);
  const Tables t = build_tables(s);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < t.space; ++i)
    if (t.value[i] && t.canon[i] == i) out.push_back(i);
  return out;
}

ComponentReport components(const EnumSpec& s) {
  validate(s);
  const Tables t = build_tables(s);
  ComponentReport rep;
  rep.candidates = s.candidate_count();
  std::vector<WorkerResult> results;
  for (int w = 0; w < s.workers; ++w) results.push_back({UnionFind(t.space), 0, 0});
  std::vector<std::thread> threads;
  for (int w = 1; w < s.workers; ++w) threads.emplace_back(run_worker, std::cref(t), w, std::ref(results[static_cast<std::size_t>(w)]));
  run_worker(t, 0, results[0]);
  for (auto& th : threads) th.join();
  UnionFind uf(t.space);
  for (auto& r : results) {
    rep.edges += r.edges;
    rep.unsound_edges += r.unsound;
    for (std::uint64_t i = 0; i < t.space; ++i)
      if (r.uf.parent[i] != i) uf.unite(i, r.uf.find(i));
  }
  std::map<std::uint64_t, std::size_t> slot;
  std::map<std::uint32_t, std::size_t> fibers;
  for (std::uint64_t i = 0; i < t.space; ++i) {
    if (!t.value[i] || t.canon[i] != i) continue;
    ++rep.points;
    ++fibers[t.inv_id[i]];
    const std::uint64_t root = uf.find(i);
    auto [it, fresh] = slot.emplace(root, rep.components.size());
    if (fresh) rep.components.push_back({0, i, t.inv_names[t.inv_id[i]]});
    rep.point_index.push_back(i);
    rep.label.push_back(static_cast<std::uint32_t>(it->second));
    Component& c = rep.components[it->second];
    ++c.size;
    if (c.invariant != t.inv_names[t.inv_id[i]]) rep.invariant_constant = false;
  }
  rep.fibers = fibers.size();
  rep.agreement = rep.invariant_constant && rep.unsound_edges == 0 && rep.components.size() == rep.fibers;
  return rep;
}

namespace {

Bridge bridge(const EnumSpec& s, std::uint64_t a, std::uint64_t b, const ChainOptions& opt) {
  Bridge out{a, b, false, 0};
  switch (s.target) {
    case Target::RatFun: {
      ConnectResult r = connect(ratfun_at(s, a), ratfun_at(s, b), opt);
      if (r.status == SearchStatus::Found && verify(r.cert).ok) out = {a, b, true, r.cert.steps.size()};
      break;
    }
    case Target::Unpointed: {
      ConnectResult r = unpointed_connect(unpointed_at(s, a), unpointed_at(s, b), opt);
      if (r.status == SearchStatus::Found && verify(r.cert).ok) out = {a, b, true, r.cert.steps.size()};
      break;
    }
    case Target::SymMat: {
      auto r = connect_forms(symmat_at(s, a), symmat_at(s, b), opt);
      if (r && verify_forms(*r).ok) out = {a, b, true, r->steps.size()};
      break;
    }
    case Target::Pd: {
      if (s.d < 2) break;
      Certificate c = concat(pd_cert(pd_at(s, a)), reverse(pd_cert(pd_at(s, b))));
      if (verify(c).ok) out = {a, b, true, c.steps.size()};
      break;
    }
  }
  return out;
}

}  // namespace

CrossCheck cross_check(const EnumSpec& s, const ChainOptions& opt) {
  CrossCheck out;
  out.raw = components(s);
  std::map<std::string, std::vector<std::size_t>> by_fiber;
  for (std::size_t i = 0; i < out.raw.components.size(); ++i) by_fiber[out.raw.components[i].invariant].push_back(i);
  out.final_components = out.raw.components.size();
  UnionFind merged(out.raw.components.size());
  bool bridges_ok = true;
  for (const auto& [inv, comps] : by_fiber)
    for (std::size_t j = 1; j < comps.size(); ++j) {
      Bridge b = bridge(s, out.raw.components[comps[0]].representative, out.raw.components[comps[j]].representative, opt);
      if (b.verified) {
        --out.final_components;
        merged.unite(comps[0], comps[j]);
      }
      bridges_ok = bridges_ok && b.verified;
      out.bridges.push_back(b);
    }
  for (auto l : out.raw.label) out.final_label.push_back(static_cast<std::uint32_t>(merged.find(l)));
  const bool sound = out.raw.invariant_constant && out.raw.unsound_edges == 0;
  out.agreement = sound && bridges_ok && out.final_components == out.raw.fibers;
  if (!sound)
    out.verdict = "counterexample: invariant not constant on a component";
  else if (!bridges_ok)
    out.verdict = "counterexample: unbridged components within a fiber";
  else if (out.bridges.empty())
    out.verdict = "components = fibers";
  else
    out.verdict = "components = fibers after bridging";
  return out;
}

}  // namespace p1h::oracle
