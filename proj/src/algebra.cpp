#include "extrilab/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace extrilab {

std::string label(const Indec& x) {
  std::ostringstream os;
  os << "M[" << x.top << "," << x.len << "]";
  return os.str();
}

Indec parse_label(const std::string& s) {
  int t = 0, l = 0;
  char m, br, comma, close;
  std::istringstream is(s);
  if (!(is >> m >> br >> t >> comma >> l >> close) || m != 'M' || br != '[' || comma != ',' ||
      close != ']' || t < 1 || l < 1)
    throw std::invalid_argument("bad module label: " + s);
  std::string rest;
  if (is >> rest) throw std::invalid_argument("bad module label: " + s);
  return Indec{t, l};
}

std::string label(const Obj& o) {
  if (o.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < o.size(); ++i) {
    if (i) s += " + ";
    s += label(o[i]);
  }
  return s;
}

Obj sorted_obj(std::vector<Indec> xs) {
  std::sort(xs.begin(), xs.end());
  return xs;
}

Obj obj_concat(const Obj& a, const Obj& b) {
  Obj c = a;
  c.insert(c.end(), b.begin(), b.end());
  return sorted_obj(std::move(c));
}

int obj_total_len(const Obj& o) {
  int s = 0;
  for (const auto& x : o) s += x.len;
  return s;
}

int Rep::total_dim() const {
  int s = 0;
  for (int d : dim) s += d;
  return s;
}

namespace {
// sorted copy plus permutation: sorted[i] == orig[perm[i]]
std::pair<Obj, std::vector<int>> sort_with_perm(const std::vector<Indec>& orig) {
  std::vector<int> perm(orig.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return orig[a] < orig[b]; });
  Obj sorted;
  for (int i : perm) sorted.push_back(orig[i]);
  return {sorted, perm};
}
}  // namespace

Nakayama::Nakayama(AlgebraSpec spec, Field field) : spec_(spec), field_(field) {
  if (spec_.vertices < 1 || spec_.loewy < 1)
    throw std::invalid_argument("algebra: need vertices >= 1 and loewy >= 1");
}

int Nakayama::wrap(int t) const {
  int m = spec_.vertices;
  return ((t - 1) % m + m) % m + 1;
}

int Nakayama::arrow_tgt(int v) const {
  if (spec_.shape == Shape::Cyclic) return (v + spec_.vertices - 1) % spec_.vertices;
  return v - 1;  // -1 at the sink
}

bool Nakayama::valid(const Indec& x) const {
  if (x.len < 1 || x.len > spec_.loewy) return false;
  if (spec_.shape == Shape::Cyclic) return x.top >= 1 && x.top <= spec_.vertices;
  return x.top >= 1 && x.top <= spec_.vertices && x.len <= x.top;
}

void Nakayama::require_valid(const Indec& x) const {
  if (!valid(x)) throw std::invalid_argument("invalid module " + label(x));
}

std::vector<Indec> Nakayama::indecomposables() const {
  std::vector<Indec> out;
  for (int t = 1; t <= spec_.vertices; ++t)
    for (int l = 1; l <= spec_.loewy; ++l)
      if (valid({t, l})) out.push_back({t, l});
  return out;
}

std::vector<Indec> Nakayama::projectives() const {
  std::vector<Indec> out;
  for (int t = 1; t <= spec_.vertices; ++t) {
    int L = spec_.loewy;
    if (spec_.shape == Shape::Linear) L = std::min(L, t);
    out.push_back({t, L});
  }
  return sorted_obj(out);
}

std::vector<Indec> Nakayama::injectives() const {
  if (spec_.shape == Shape::Cyclic) return projectives();
  std::vector<Indec> out;
  for (int s = 1; s <= spec_.vertices; ++s) {
    int u = std::min(spec_.vertices, s + spec_.loewy - 1);
    out.push_back({u, u - s + 1});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Nakayama::is_projective(const Indec& x) const {
  for (const auto& p : projectives())
    if (p == x) return true;
  return false;
}

bool Nakayama::is_injective(const Indec& x) const {
  for (const auto& p : injectives())
    if (p == x) return true;
  return false;
}

// basis ordering shared by rep_of and layer maps: at each 0-based vertex the
// pairs (summand, layer) sorted ascending (cached on the Nakayama instance)
static const std::vector<std::vector<std::pair<int, int>>>& basis_table(const Nakayama& A,
                                                                        const Obj& o) {
  return A.obj_basis(o);
}

static int basis_index(const std::vector<std::pair<int, int>>& at_vertex, int s, int j) {
  auto it = std::find(at_vertex.begin(), at_vertex.end(), std::make_pair(s, j));
  if (it == at_vertex.end()) throw std::logic_error("basis_index: missing layer");
  return (int)(it - at_vertex.begin());
}

Rep Nakayama::rep_of(const Indec& x) const { return rep_of(Obj{x}); }

Rep Nakayama::rep_of(const Obj& o) const {
  int mm = spec_.vertices;
  auto basis = basis_table(*this, o);
  Rep V;
  V.dim.resize(mm);
  for (int v = 0; v < mm; ++v) V.dim[v] = (int)basis[v].size();
  V.arrow.resize(mm);
  for (int v = 0; v < mm; ++v) {
    int t = arrow_tgt(v);
    V.arrow[v] = Mat::zeros(t >= 0 ? V.dim[t] : 0, V.dim[v]);
    if (t < 0) continue;
    for (int col = 0; col < V.dim[v]; ++col) {
      auto [s, j] = basis[v][col];
      if (j + 1 >= o[s].len) continue;
      V.arrow[v].at(basis_index(basis[t], s, j + 1), col) = Rat(1);
    }
  }
  return V;
}

// RepMap rep_of(src) -> rep_of(dst) sending layer (s,j) to layer map(s,j)
static RepMap layer_map(const Nakayama& A, const Obj& src, const Obj& dst,
                        const std::function<std::optional<std::pair<int, int>>(int, int)>& map) {
  auto bs = basis_table(A, src);
  auto bd = basis_table(A, dst);
  RepMap f;
  for (int v = 0; v < A.m(); ++v) {
    Mat M((int)bd[v].size(), (int)bs[v].size());
    for (int c = 0; c < (int)bs[v].size(); ++c) {
      auto [s, j] = bs[v][c];
      auto tgt = map(s, j);
      if (!tgt) continue;
      M.at(basis_index(bd[v], tgt->first, tgt->second), c) = Rat(1);
    }
    f.f.push_back(std::move(M));
  }
  return f;
}

HomSpace Nakayama::solve_hom(const Rep& A, const Rep& B) const {
  int mm = spec_.vertices;
  std::vector<int> offset(mm + 1, 0);
  for (int v = 0; v < mm; ++v) offset[v + 1] = offset[v] + B.dim[v] * A.dim[v];
  int nunk = offset[mm];
  std::vector<Vec> eqs;
  for (int v = 0; v < mm; ++v) {
    int t = arrow_tgt(v);
    if (t < 0) continue;
    // f[t] * A.arrow[v] = B.arrow[v] * f[v]
    for (int r = 0; r < B.dim[t]; ++r)
      for (int c = 0; c < A.dim[v]; ++c) {
        Vec eq(nunk, Rat(0));
        bool any = false;
        for (int k = 0; k < A.dim[t]; ++k)
          if (!A.arrow[v].at(k, c).is_zero()) {
            eq[offset[t] + r * A.dim[t] + k] += A.arrow[v].at(k, c);
            any = true;
          }
        for (int k = 0; k < B.dim[v]; ++k)
          if (!B.arrow[v].at(r, k).is_zero()) {
            eq[offset[v] + k * A.dim[v] + c] -= B.arrow[v].at(r, k);
            any = true;
          }
        if (!any) continue;
        for (auto& x : eq) x = field_.reduce(x);
        eqs.push_back(std::move(eq));
      }
  }
  Subspace sol =
      eqs.empty() ? full_subspace(nunk) : kernel_basis(Mat::from_rows(eqs, nunk), field_);
  HomSpace H;
  H.dim = sol.dim();
  H.basis_flat = sol.basis;
  for (int i = 0; i < H.dim; ++i) H.basis.push_back(unflatten(sol.basis.row(i), A, B));
  return H;
}

const HomSpace& Nakayama::hom(const Indec& a, const Indec& b) const {
  std::lock_guard<std::recursive_mutex> lock(cache_mu_);
  auto key = std::make_pair(a, b);
  auto it = hom_cache_.find(key);
  if (it != hom_cache_.end()) return it->second;
  HomSpace H = solve_hom(rep_of(a), rep_of(b));
  return hom_cache_.emplace(key, std::move(H)).first->second;
}

int Nakayama::hom_dim_overlap(const Indec& a, const Indec& b) const {
  // phi_j has image of length j: a quotient of a glued onto the depth-j
  // submodule of b; it exists iff the tops align
  int count = 0;
  for (int j = 1; j <= std::min(a.len, b.len); ++j) {
    if (spec_.shape == Shape::Cyclic) {
      if (wrap(b.top - b.len + j) == a.top) ++count;
    } else {
      if (b.top - b.len + j == a.top) ++count;
    }
  }
  return count;
}

RepMap Nakayama::compose(const RepMap& f, const RepMap& g) const {
  RepMap h;
  h.f.resize(f.f.size());
  for (size_t v = 0; v < f.f.size(); ++v) h.f[v] = mul(g.f[v], f.f[v], field_);
  return h;
}

RepMap Nakayama::rep_map_add(const RepMap& f, const RepMap& g) const {
  RepMap h;
  h.f.resize(f.f.size());
  for (size_t v = 0; v < f.f.size(); ++v) h.f[v] = add(f.f[v], g.f[v], field_);
  return h;
}

RepMap Nakayama::rep_map_scale(const Rat& c, const RepMap& f) const {
  RepMap h;
  h.f.resize(f.f.size());
  for (size_t v = 0; v < f.f.size(); ++v) h.f[v] = scale(c, f.f[v], field_);
  return h;
}

RepMap Nakayama::identity_map(const Rep& V) const {
  RepMap f;
  for (int d : V.dim) f.f.push_back(Mat::identity(d));
  return f;
}

RepMap Nakayama::zero_map(const Rep& A, const Rep& B) const {
  RepMap f;
  for (size_t v = 0; v < A.dim.size(); ++v) f.f.push_back(Mat::zeros(B.dim[v], A.dim[v]));
  return f;
}

Vec Nakayama::flatten(const RepMap& f) const {
  Vec out;
  for (const Mat& M : f.f) out.insert(out.end(), M.a.begin(), M.a.end());
  return out;
}

RepMap Nakayama::unflatten(const Vec& v, const Rep& A, const Rep& B) const {
  RepMap f;
  size_t pos = 0;
  for (size_t vx = 0; vx < A.dim.size(); ++vx) {
    Mat M(B.dim[vx], A.dim[vx]);
    for (auto& x : M.a) x = v[pos++];
    f.f.push_back(std::move(M));
  }
  if (pos != v.size()) throw std::invalid_argument("unflatten: length mismatch");
  return f;
}

Vec Nakayama::hom_coords(const Indec& a, const Indec& b, const RepMap& f) const {
  const HomSpace& H = hom(a, b);
  if (H.dim == 0) {
    if (!rep_map_is_zero(f)) throw std::logic_error("hom_coords: nonzero map in zero space");
    return Vec{};
  }
  return coords_in_rowspace(H.basis_flat, flatten(f), field_);
}

RepMap Nakayama::hom_from_coords(const Indec& a, const Indec& b, const Vec& coords) const {
  const HomSpace& H = hom(a, b);
  if ((int)coords.size() != H.dim) throw std::invalid_argument("hom_from_coords: dim");
  RepMap f = zero_map(rep_of(a), rep_of(b));
  for (int i = 0; i < H.dim; ++i)
    if (!coords[i].is_zero()) f = rep_map_add(f, rep_map_scale(coords[i], H.basis[i]));
  return f;
}

bool Nakayama::rep_map_equal(const RepMap& f, const RepMap& g) const {
  for (size_t v = 0; v < f.f.size(); ++v)
    if (!(f.f[v] == g.f[v])) return false;
  return true;
}

bool Nakayama::rep_map_is_zero(const RepMap& f) const {
  for (const Mat& M : f.f)
    if (!M.is_zero()) return false;
  return true;
}

bool Nakayama::is_mono(const RepMap& f) const {
  for (const Mat& M : f.f)
    if (rank(M, field_) != M.cols) return false;
  return true;
}

bool Nakayama::is_epi(const RepMap& f) const {
  for (const Mat& M : f.f)
    if (rank(M, field_) != M.rows) return false;
  return true;
}

SubRepResult Nakayama::kernel_rep(const RepMap& f, const Rep& A, const Rep& B) const {
  (void)B;
  int mm = spec_.vertices;
  SubRepResult out;
  out.sub.dim.resize(mm);
  out.sub.arrow.resize(mm);
  out.incl.f.resize(mm);
  for (int v = 0; v < mm; ++v) {
    Subspace K = kernel_basis(f.f[v], field_);
    out.sub.dim[v] = K.dim();
    out.incl.f[v] = transpose(K.basis);
  }
  for (int v = 0; v < mm; ++v) {
    int t = arrow_tgt(v);
    if (t < 0) {
      out.sub.arrow[v] = Mat::zeros(0, out.sub.dim[v]);
      continue;
    }
    Mat img = mul(A.arrow[v], out.incl.f[v], field_);
    auto sol = solve(out.incl.f[t], img, field_);
    if (!sol) throw std::logic_error("kernel_rep: kernel not arrow-stable");
    out.sub.arrow[v] = *sol;
  }
  return out;
}

QuotRepResult Nakayama::cokernel_rep(const RepMap& f, const Rep& A, const Rep& B) const {
  (void)A;
  int mm = spec_.vertices;
  QuotRepResult out;
  std::vector<QuotientBasis> qb(mm);
  out.quot.dim.resize(mm);
  out.quot.arrow.resize(mm);
  out.proj.f.resize(mm);
  for (int v = 0; v < mm; ++v) {
    Subspace img = span_of_rows(transpose(f.f[v]), field_);
    qb[v] = quotient_basis(B.dim[v], img, field_);
    out.quot.dim[v] = qb[v].projection.rows;
    out.proj.f[v] = qb[v].projection;
  }
  for (int v = 0; v < mm; ++v) {
    int t = arrow_tgt(v);
    if (t < 0) {
      out.quot.arrow[v] = Mat::zeros(0, out.quot.dim[v]);
      continue;
    }
    out.quot.arrow[v] = mul(qb[t].projection, mul(B.arrow[v], qb[v].section, field_), field_);
  }
  return out;
}

Rep Nakayama::direct_sum(const Rep& A, const Rep& B, RepMap* injA, RepMap* injB, RepMap* projA,
                         RepMap* projB) const {
  int mm = spec_.vertices;
  Rep S;
  S.dim.resize(mm);
  S.arrow.resize(mm);
  for (int v = 0; v < mm; ++v) S.dim[v] = A.dim[v] + B.dim[v];
  for (int v = 0; v < mm; ++v) {
    int t = arrow_tgt(v);
    S.arrow[v] = Mat::zeros(t >= 0 ? S.dim[t] : 0, S.dim[v]);
    if (t < 0) continue;
    for (int r = 0; r < A.dim[t]; ++r)
      for (int c = 0; c < A.dim[v]; ++c) S.arrow[v].at(r, c) = A.arrow[v].at(r, c);
    for (int r = 0; r < B.dim[t]; ++r)
      for (int c = 0; c < B.dim[v]; ++c)
        S.arrow[v].at(A.dim[t] + r, A.dim[v] + c) = B.arrow[v].at(r, c);
  }
  auto block = [&](bool first, bool into) {
    RepMap f;
    for (int v = 0; v < mm; ++v) {
      int sub = first ? A.dim[v] : B.dim[v];
      int off = first ? 0 : A.dim[v];
      Mat M = into ? Mat::zeros(S.dim[v], sub) : Mat::zeros(sub, S.dim[v]);
      for (int i = 0; i < sub; ++i) {
        if (into)
          M.at(off + i, i) = Rat(1);
        else
          M.at(i, off + i) = Rat(1);
      }
      f.f.push_back(std::move(M));
    }
    return f;
  };
  if (injA) *injA = block(true, true);
  if (injB) *injB = block(false, true);
  if (projA) *projA = block(true, false);
  if (projB) *projB = block(false, false);
  return S;
}

// find an intertwiner g: U -> W with g∘pre_i = rhs_i and post_j∘g = rhs_j
static std::optional<RepMap> solve_map(
    const Nakayama& N, const Rep& U, const Rep& W,
    const std::vector<std::pair<const RepMap*, const RepMap*>>& right_cons,
    const std::vector<std::pair<const RepMap*, const RepMap*>>& left_cons) {
  const Field& F = N.field();
  int mm = N.m();
  std::vector<int> offset(mm + 1, 0);
  for (int v = 0; v < mm; ++v) offset[v + 1] = offset[v] + W.dim[v] * U.dim[v];
  int nunk = offset[mm];
  std::vector<Vec> eqs;
  std::vector<Rat> rhs;

  auto unk = [&](int v, int r, int c) { return offset[v] + r * U.dim[v] + c; };

  // intertwining: g[t] * U.arrow[v] = W.arrow[v] * g[v]
  for (int v = 0; v < mm; ++v) {
    int t = (N.spec().shape == Shape::Cyclic) ? (v + mm - 1) % mm : v - 1;
    if (t < 0) continue;
    for (int r = 0; r < W.dim[t]; ++r)
      for (int c = 0; c < U.dim[v]; ++c) {
        Vec eq(nunk, Rat(0));
        bool any = false;
        for (int k = 0; k < U.dim[t]; ++k)
          if (!U.arrow[v].at(k, c).is_zero()) {
            eq[unk(t, r, k)] += U.arrow[v].at(k, c);
            any = true;
          }
        for (int k = 0; k < W.dim[v]; ++k)
          if (!W.arrow[v].at(r, k).is_zero()) {
            eq[unk(v, k, c)] -= W.arrow[v].at(r, k);
            any = true;
          }
        if (!any) continue;
        for (auto& x : eq) x = F.reduce(x);
        eqs.push_back(std::move(eq));
        rhs.push_back(Rat(0));
      }
  }
  // right constraints: g[v] * pre[v] = rhs[v]
  for (auto& [pre, want] : right_cons)
    for (int v = 0; v < mm; ++v) {
      const Mat& P = pre->f[v];
      const Mat& T = want->f[v];
      for (int r = 0; r < W.dim[v]; ++r)
        for (int c = 0; c < P.cols; ++c) {
          Vec eq(nunk, Rat(0));
          for (int k = 0; k < U.dim[v]; ++k)
            if (!P.at(k, c).is_zero()) eq[unk(v, r, k)] += P.at(k, c);
          for (auto& x : eq) x = F.reduce(x);
          eqs.push_back(std::move(eq));
          rhs.push_back(T.at(r, c));
        }
    }
  // left constraints: post[v] * g[v] = rhs[v]
  for (auto& [post, want] : left_cons)
    for (int v = 0; v < mm; ++v) {
      const Mat& P = post->f[v];
      const Mat& T = want->f[v];
      for (int r = 0; r < P.rows; ++r)
        for (int c = 0; c < U.dim[v]; ++c) {
          Vec eq(nunk, Rat(0));
          for (int k = 0; k < W.dim[v]; ++k)
            if (!P.at(r, k).is_zero()) eq[unk(v, k, c)] += P.at(r, k);
          for (auto& x : eq) x = F.reduce(x);
          eqs.push_back(std::move(eq));
          rhs.push_back(T.at(r, c));
        }
    }

  if (eqs.empty()) return N.zero_map(U, W);
  Mat A = Mat::from_rows(eqs, nunk);
  Mat B((int)rhs.size(), 1);
  for (size_t i = 0; i < rhs.size(); ++i) B.at((int)i, 0) = rhs[i];
  auto x = solve(A, B, F);
  if (!x) return std::nullopt;
  return N.unflatten(x->col(0), U, W);
}

const std::vector<std::vector<std::pair<int, int>>>& Nakayama::obj_basis(
    const std::vector<Indec>& o) const {
  std::lock_guard<std::recursive_mutex> lock(cache_mu_);
  auto it = basis_cache_.find(o);
  if (it != basis_cache_.end()) return it->second;
  std::vector<std::vector<std::pair<int, int>>> basis(m());
  for (size_t s = 0; s < o.size(); ++s) {
    require_valid(o[s]);
    for (int j = 0; j < o[s].len; ++j) {
      int v = wrap(o[s].top - j) - 1;
      basis[v].push_back({(int)s, j});
    }
  }
  for (auto& b : basis) std::sort(b.begin(), b.end());
  return basis_cache_.emplace(o, std::move(basis)).first->second;
}

RepMap Nakayama::block_of(const RepMap& f, const std::vector<Indec>& src, int i,
                          const std::vector<Indec>& dst, int j) const {
  auto bs = basis_table(*this, src);
  auto bd = basis_table(*this, dst);
  Rep S = rep_of(Obj{src[i]});
  Rep D = rep_of(Obj{dst[j]});
  auto sb = basis_table(*this, {src[i]});
  auto db = basis_table(*this, {dst[j]});
  RepMap out;
  out.f.resize(spec_.vertices);
  for (int v = 0; v < spec_.vertices; ++v) {
    out.f[v] = Mat::zeros(D.dim[v], S.dim[v]);
    for (int c = 0; c < S.dim[v]; ++c) {
      int src_col = basis_index(bs[v], i, sb[v][c].second);
      for (int r = 0; r < D.dim[v]; ++r) {
        int dst_row = basis_index(bd[v], j, db[v][r].second);
        out.f[v].at(r, c) = f.f[v].at(dst_row, src_col);
      }
    }
  }
  return out;
}

void Nakayama::add_block(RepMap& f, const std::vector<Indec>& src, int i,
                         const std::vector<Indec>& dst, int j, const RepMap& blk) const {
  auto bs = basis_table(*this, src);
  auto bd = basis_table(*this, dst);
  auto sb = basis_table(*this, {src[i]});
  auto db = basis_table(*this, {dst[j]});
  for (int v = 0; v < spec_.vertices; ++v) {
    for (int c = 0; c < blk.f[v].cols; ++c) {
      int src_col = basis_index(bs[v], i, sb[v][c].second);
      for (int r = 0; r < blk.f[v].rows; ++r) {
        if (blk.f[v].at(r, c).is_zero()) continue;
        int dst_row = basis_index(bd[v], j, db[v][r].second);
        f.f[v].at(dst_row, src_col) =
            field_.add(f.f[v].at(dst_row, src_col), blk.f[v].at(r, c));
      }
    }
  }
}

RepMap Nakayama::summand_relabel(const std::vector<Indec>& src, const std::vector<Indec>& dst,
                                 const std::vector<int>& to_dst) const {
  return layer_map(*this, src, dst, [&](int s, int j) -> std::optional<std::pair<int, int>> {
    if (to_dst[s] < 0) return std::nullopt;
    return std::make_pair(to_dst[s], j);
  });
}

std::optional<RepMap> Nakayama::constrained_hom(
    const Rep& U, const Rep& W,
    const std::vector<std::pair<const RepMap*, const RepMap*>>& right_cons,
    const std::vector<std::pair<const RepMap*, const RepMap*>>& left_cons) const {
  return solve_map(*this, U, W, right_cons, left_cons);
}

DecompResult Nakayama::decompose(const Rep& V0) const {
  int mm = spec_.vertices;
  std::vector<Indec> parts;
  std::vector<RepMap> part_incl;  // rep_of(part) -> V0

  Rep V = V0;
  RepMap into0 = identity_map(V0);  // V -> V0
  while (V.total_dim() > 0) {
    // longest nonzero arrow power x^K (K = 0 means identity)
    std::vector<Mat> cur(mm);
    std::vector<int> curtgt(mm);
    for (int v = 0; v < mm; ++v) {
      cur[v] = Mat::identity(V.dim[v]);
      curtgt[v] = v;
    }
    int K = 0;
    while (true) {
      std::vector<Mat> nxt(mm);
      std::vector<int> nxttgt(mm, -1);
      bool nonzero = false;
      for (int v = 0; v < mm; ++v) {
        if (curtgt[v] < 0) {
          nxt[v] = Mat::zeros(0, V.dim[v]);
          continue;
        }
        int t = arrow_tgt(curtgt[v]);
        nxttgt[v] = t;
        if (t < 0) {
          nxt[v] = Mat::zeros(0, V.dim[v]);
          continue;
        }
        nxt[v] = mul(V.arrow[curtgt[v]], cur[v], field_);
        if (!nxt[v].is_zero()) nonzero = true;
      }
      if (!nonzero) break;
      cur = std::move(nxt);
      curtgt = nxttgt;
      ++K;
      if (K > spec_.loewy + 1) throw std::logic_error("decompose: nilpotency violated");
    }
    int bestv = -1, bestcol = -1;
    for (int v = 0; v < mm && bestv < 0; ++v) {
      if (cur[v].rows == 0) continue;
      for (int c = 0; c < cur[v].cols && bestv < 0; ++c)
        for (int r = 0; r < cur[v].rows; ++r)
          if (!cur[v].at(r, c).is_zero()) {
            bestv = v;
            bestcol = c;
            break;
          }
    }
    if (bestv < 0) throw std::logic_error("decompose: no generator found");
    int L = K + 1;
    Indec part{bestv + 1, L};
    require_valid(part);
    Rep U = rep_of(part);
    auto ub = basis_table(*this, {part});
    RepMap u;  // U -> V
    u.f.resize(mm);
    for (int v = 0; v < mm; ++v) u.f[v] = Mat::zeros(V.dim[v], U.dim[v]);
    Vec w(V.dim[bestv], Rat(0));
    w[bestcol] = Rat(1);
    int atv = bestv;
    for (int k = 0; k < L; ++k) {
      int col = basis_index(ub[atv], 0, k);
      for (int r = 0; r < V.dim[atv]; ++r) u.f[atv].at(r, col) = w[r];
      if (k + 1 < L) {
        w = apply(V.arrow[atv], w, field_);
        atv = arrow_tgt(atv);
        if (atv < 0) throw std::logic_error("decompose: chain fell off quiver");
      }
    }
    // retraction pi: V -> U with pi∘u = id_U; exists because the chain has
    // maximal length in V
    RepMap idU = identity_map(U);
    auto pi = solve_map(*this, V, U, {{&u, &idU}}, {});
    if (!pi) throw std::logic_error("decompose: retraction missing for maximal chain");
    parts.push_back(part);
    part_incl.push_back(compose(u, into0));  // into0 ∘ u

    SubRepResult W = kernel_rep(*pi, V, U);
    into0 = compose(W.incl, into0);
    V = W.sub;
  }

  auto [obj, perm] = sort_with_perm(parts);
  DecompResult out;
  out.obj = obj;
  Rep canon = rep_of(obj);
  auto cb = basis_table(*this, obj);
  out.from_canon.f.resize(mm);
  for (int v = 0; v < mm; ++v) {
    out.from_canon.f[v] = Mat::zeros(V0.dim[v], canon.dim[v]);
    for (int c = 0; c < canon.dim[v]; ++c) {
      auto [p, j] = cb[v][c];
      const RepMap& inc = part_incl[perm[p]];
      auto pb = basis_table(*this, {obj[p]});
      int src_col = basis_index(pb[v], 0, j);
      for (int r = 0; r < V0.dim[v]; ++r) out.from_canon.f[v].at(r, c) = inc.f[v].at(r, src_col);
    }
  }
  out.to_canon.f.resize(mm);
  for (int v = 0; v < mm; ++v) {
    auto inv = inverse(out.from_canon.f[v], field_);
    if (!inv) throw std::logic_error("decompose: assembled map not invertible");
    out.to_canon.f[v] = *inv;
  }
  return out;
}

CoverData Nakayama::projective_cover(const Indec& x) const { return projective_cover(Obj{x}); }

CoverData Nakayama::projective_cover(const Obj& o) const {
  std::vector<Indec> Plist;
  std::vector<Indec> Klist;
  std::vector<int> ker_owner;  // o-summand owning each kernel piece
  for (const auto& x : o) {
    int L = spec_.loewy;
    if (spec_.shape == Shape::Linear) L = std::min(L, x.top);
    Plist.push_back({x.top, L});
    if (L > x.len) {
      Klist.push_back({wrap(x.top - x.len), L - x.len});
      ker_owner.push_back((int)(&x - o.data()));
    }
  }
  auto [sortedP, permP] = sort_with_perm(Plist);
  auto [sortedK, permK] = sort_with_perm(Klist);
  std::vector<int> posP(o.size());  // o-summand -> position in sortedP
  for (size_t p = 0; p < permP.size(); ++p) posP[permP[p]] = (int)p;

  CoverData out;
  out.proj = sortedP;
  out.ker = sortedK;
  out.cover = layer_map(*this, sortedP, o, [&](int p, int j) -> std::optional<std::pair<int, int>> {
    int s = permP[p];
    if (j < o[s].len) return std::make_pair(s, j);
    return std::nullopt;
  });
  out.ker_incl =
      layer_map(*this, sortedK, sortedP, [&](int q, int j) -> std::optional<std::pair<int, int>> {
        int owner = ker_owner[permK[q]];
        return std::make_pair(posP[owner], j + o[owner].len);
      });
  for (size_t q = 0; q < sortedK.size(); ++q) out.ker_owner.push_back(ker_owner[permK[q]]);
  for (size_t p = 0; p < sortedP.size(); ++p) out.proj_owner.push_back(permP[p]);
  return out;
}

EnvelopeData Nakayama::injective_envelope(const Indec& x) const {
  return injective_envelope(Obj{x});
}

EnvelopeData Nakayama::injective_envelope(const Obj& o) const {
  std::vector<Indec> Ilist;
  std::vector<int> off;  // layer offset of each o-summand inside its envelope
  std::vector<Indec> Clist;
  std::vector<int> cok_owner;
  for (const auto& x : o) {
    Indec I{0, 0};
    int offset = 0;
    if (spec_.shape == Shape::Cyclic) {
      I = {wrap(x.top + spec_.loewy - x.len), spec_.loewy};
      offset = spec_.loewy - x.len;
    } else {
      int s = x.top - x.len + 1;
      int u = std::min(spec_.vertices, s + spec_.loewy - 1);
      I = {u, u - s + 1};
      offset = u - x.top;
    }
    Ilist.push_back(I);
    off.push_back(offset);
    if (offset > 0) {
      Clist.push_back({I.top, offset});
      cok_owner.push_back((int)(&x - o.data()));
    }
  }
  auto [sortedI, permI] = sort_with_perm(Ilist);
  auto [sortedC, permC] = sort_with_perm(Clist);
  std::vector<int> posI(o.size());
  for (size_t p = 0; p < permI.size(); ++p) posI[permI[p]] = (int)p;
  std::vector<int> posC(Clist.size());
  for (size_t p = 0; p < permC.size(); ++p) posC[permC[p]] = (int)p;
  std::vector<int> cok_of(o.size(), -1);  // o-summand -> position in sortedC
  for (size_t i = 0; i < cok_owner.size(); ++i) cok_of[cok_owner[i]] = posC[i];

  EnvelopeData out;
  out.inj = sortedI;
  out.cok = sortedC;
  out.env = layer_map(*this, o, sortedI, [&](int s, int j) -> std::optional<std::pair<int, int>> {
    return std::make_pair(posI[s], j + off[s]);
  });
  out.cok_proj =
      layer_map(*this, sortedI, sortedC, [&](int p, int j) -> std::optional<std::pair<int, int>> {
        int s = permI[p];
        if (j < off[s]) return std::make_pair(cok_of[s], j);
        return std::nullopt;
      });
  for (size_t q = 0; q < sortedC.size(); ++q) out.cok_owner.push_back(cok_owner[permC[q]]);
  for (size_t p = 0; p < sortedI.size(); ++p) out.inj_owner.push_back(permI[p]);
  return out;
}

Obj Nakayama::syzygy(const Indec& x) const { return projective_cover(x).ker; }
Obj Nakayama::cosyzygy(const Indec& x) const { return injective_envelope(x).cok; }
Obj Nakayama::syzygy(const Obj& o) const { return projective_cover(o).ker; }
Obj Nakayama::cosyzygy(const Obj& o) const { return injective_envelope(o).cok; }

int Nakayama::ext_dim(int i, const Indec& a, const Indec& b) const {
  if (i < 1) throw std::invalid_argument("ext_dim: need i >= 1");
  // resolution ... -> P_1 -> P_0 -> a with d_k = ker_incl_{k-1} ∘ cover_k
  std::vector<Obj> P(i + 2);
  std::vector<RepMap> d(i + 2);  // d[k]: rep(P_k) -> rep(P_{k-1}), k >= 1
  Obj cur{a};
  CoverData prev;
  for (int k = 0; k <= i + 1; ++k) {
    if (cur.empty()) {
      P[k] = {};
      if (k >= 1) d[k] = zero_map(rep_of(P[k]), rep_of(P[k - 1]));
      cur = {};
      continue;
    }
    CoverData cd = projective_cover(cur);
    P[k] = cd.proj;
    if (k >= 1) d[k] = compose(cd.cover, prev.ker_incl);
    prev = cd;
    cur = cd.ker;
  }
  Rep rb = rep_of(Obj{b});
  // Hom(P_k, b) spaces and the precomposition maps between them
  std::vector<HomSpace> H(i + 2);
  for (int k = 0; k <= i + 1; ++k) H[k] = solve_hom(rep_of(P[k]), rb);
  auto precomp = [&](int k) {  // matrix Hom(P_{k-1},b) -> Hom(P_k,b)
    Mat M(H[k].dim, H[k - 1].dim);
    for (int c = 0; c < H[k - 1].dim; ++c) {
      RepMap comp = compose(d[k], H[k - 1].basis[c]);
      if (H[k].dim == 0) continue;
      Vec coords = coords_in_rowspace(H[k].basis_flat, flatten(comp), field_);
      for (int r = 0; r < H[k].dim; ++r) M.at(r, c) = coords[r];
    }
    return M;
  };
  Mat Mi = precomp(i);        // Hom(P_{i-1},b) -> Hom(P_i,b)
  Mat Mi1 = precomp(i + 1);   // Hom(P_i,b) -> Hom(P_{i+1},b)
  int ker = H[i].dim - rank(Mi1, field_);
  int im = rank(Mi, field_);
  return ker - im;
}

const StHom& Nakayama::st_hom(const Indec& a, const Indec& b) const {
  std::lock_guard<std::recursive_mutex> lock(cache_mu_);
  auto key = std::make_pair(a, b);
  auto it = st_cache_.find(key);
  if (it != st_cache_.end()) return it->second;
  const HomSpace& H = hom(a, b);
  std::vector<Vec> gens;
  for (const Indec& p : projectives()) {
    const HomSpace& ap = hom(a, p);
    const HomSpace& pb = hom(p, b);
    for (const RepMap& f : ap.basis)
      for (const RepMap& g : pb.basis) {
        RepMap comp = compose(f, g);
        if (!rep_map_is_zero(comp)) gens.push_back(hom_coords(a, b, comp));
      }
  }
  StHom st;
  st.through_proj = span_of_vectors(gens, H.dim, field_);
  st.qb = quotient_basis(H.dim, st.through_proj, field_);
  st.dim = st.qb.projection.rows;
  return st_cache_.emplace(key, std::move(st)).first->second;
}

int Nakayama::st_hom_dim_overlap(const Indec& a, const Indec& b) const {
  if (spec_.shape != Shape::Cyclic)
    throw std::logic_error("st_hom_dim_overlap: cyclic shape only");
  // phi_j factors through a projective iff j <= l + l' - N
  int count = 0;
  int lo = std::max(1, a.len + b.len - spec_.loewy + 1);
  for (int j = lo; j <= std::min(a.len, b.len); ++j)
    if (wrap(b.top - b.len + j) == a.top) ++count;
  return count;
}

}  // namespace extrilab
