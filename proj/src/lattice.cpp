#include "coh/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace coh {

fin_poset fin_poset::discrete(int n) { return from_pairs(n, {}); }

fin_poset fin_poset::chain(int n) {
  std::vector<std::pair<int, int>> le;
  for (int i = 0; i + 1 < n; ++i) le.push_back({i, i + 1});
  return from_pairs(n, le);
}

fin_poset fin_poset::from_pairs(int n, const std::vector<std::pair<int, int>>& le) {
  std::vector<bits> up(n, bits(n));
  for (int i = 0; i < n; ++i) up[i].set(i);
  for (auto [a, b] : le) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw lattice_error("order pair out of range");
    up[a].set(b);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (up[i].test(k)) up[i] |= up[k];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (up[i].test(j) && up[j].test(i))
        throw lattice_error("order is not antisymmetric: " + std::to_string(i) + " and " + std::to_string(j));
  return from_up(std::move(up));
}

fin_poset fin_poset::from_up(std::vector<bits> up) {
  fin_poset p;
  p.n = static_cast<int>(up.size());
  p.up = std::move(up);
  p.down.assign(p.n, bits(p.n));
  for (int i = 0; i < p.n; ++i) p.up[i].for_each([&](int j) { p.down[j].set(i); });
  return p;
}

bool fin_poset::is_up_set(const bits& s) const {
  bool ok = true;
  s.for_each([&](int x) { ok = ok && up[x].subset_of(s); });
  return ok;
}

bits fin_poset::up_closure(const bits& s) const {
  bits r(n);
  s.for_each([&](int x) { r |= up[x]; });
  return r;
}

bits fin_poset::down_closure(const bits& s) const {
  bits r(n);
  s.for_each([&](int x) { r |= down[x]; });
  return r;
}

std::vector<int> fin_poset::maximal(const bits& s) const {
  std::vector<int> r;
  s.for_each([&](int x) {
    bits above = up[x] & s;
    if (above.count() == 1) r.push_back(x);
  });
  return r;
}

std::vector<int> fin_poset::minimal(const bits& s) const {
  std::vector<int> r;
  s.for_each([&](int x) {
    bits below = down[x] & s;
    if (below.count() == 1) r.push_back(x);
  });
  return r;
}

std::vector<std::pair<int, int>> fin_poset::covers() const {
  std::vector<std::pair<int, int>> r;
  for (int x = 0; x < n; ++x)
    up[x].for_each([&](int y) {
      if (y == x) return;
      bits between = up[x] & down[y];
      if (between.count() == 2) r.push_back({x, y});
    });
  return r;
}

std::vector<bits> fin_poset::up_sets(std::size_t limit) const {
  // maximal-first order: a point is decided after everything above it
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto ca = up[a].count(), cb = up[b].count();
    return ca != cb ? ca < cb : a < b;
  });
  std::vector<bits> out;
  bits cur(n);
  std::function<void(int)> go = [&](int i) {
    if (out.size() > limit) throw lattice_error("too many up-sets (limit " + std::to_string(limit) + ")");
    if (i == n) {
      out.push_back(cur);
      return;
    }
    int x = order[i];
    go(i + 1);
    bits strict = up[x];
    strict.set(x, false);
    if (strict.subset_of(cur)) {
      cur.set(x);
      go(i + 1);
      cur.set(x, false);
    }
  };
  go(0);
  std::sort(out.begin(), out.end(), [](const bits& a, const bits& b) {
    auto ca = a.count(), cb = b.count();
    return ca != cb ? ca < cb : a < b;
  });
  return out;
}

bool operator==(const fin_poset& a, const fin_poset& b) { return a.n == b.n && a.up == b.up; }

namespace {

void fill_tables(fin_lattice& l) {
  int n = l.n;
  l.meet_t.assign(static_cast<std::size_t>(n) * n, -1);
  l.join_t.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      bits lower = l.order.down[a] & l.order.down[b];
      int m = -1;
      lower.for_each([&](int c) {
        if (m < 0 && lower.subset_of(l.order.down[c])) m = c;
      });
      bits upper = l.order.up[a] & l.order.up[b];
      int j = -1;
      upper.for_each([&](int c) {
        if (j < 0 && upper.subset_of(l.order.up[c])) j = c;
      });
      if (m < 0) throw lattice_error("elements " + std::to_string(a) + " and " + std::to_string(b) + " have no meet");
      if (j < 0) throw lattice_error("elements " + std::to_string(a) + " and " + std::to_string(b) + " have no join");
      l.meet_t[a * n + b] = l.meet_t[b * n + a] = m;
      l.join_t[a * n + b] = l.join_t[b * n + a] = j;
    }
}

}  // namespace

fin_lattice fin_lattice::from_order(const fin_poset& p) {
  if (p.n == 0) throw lattice_error("a lattice needs at least one element");
  fin_lattice l;
  l.n = p.n;
  l.order = p;
  fill_tables(l);
  l.bot = l.top = 0;
  for (int a = 0; a < l.n; ++a) {
    l.bot = l.meet(l.bot, a);
    l.top = l.join(l.top, a);
  }
  for (int a = 0; a < l.n; ++a)
    for (int b = 0; b < l.n; ++b)
      for (int c = 0; c < l.n; ++c)
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)))
          throw lattice_error("lattice is not distributive at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                              std::to_string(c) + ")");
  return l;
}

fin_lattice fin_lattice::from_pairs(int n, const std::vector<std::pair<int, int>>& le) {
  return from_order(fin_poset::from_pairs(n, le));
}

fin_lattice fin_lattice::chain(int n) { return from_order(fin_poset::chain(n)); }

std::vector<int> fin_lattice::join_irreducibles() const {
  std::vector<int> r;
  for (int j = 0; j < n; ++j) {
    if (j == bot) continue;
    int covers_below = 0;
    order.down[j].for_each([&](int x) {
      if (x == j) return;
      bits between = order.up[x] & order.down[j];
      if (between.count() == 2) ++covers_below;
    });
    if (covers_below == 1) r.push_back(j);
  }
  return r;
}

void check_hom(const fin_lattice& l, const fin_lattice& m, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != l.n) throw lattice_error("hom has wrong length");
  for (int v : f)
    if (v < 0 || v >= m.n) throw lattice_error("hom value out of range");
  if (f[l.bot] != m.bot) throw lattice_error("hom does not preserve bottom");
  if (f[l.top] != m.top) throw lattice_error("hom does not preserve top");
  for (int a = 0; a < l.n; ++a)
    for (int b = 0; b < l.n; ++b) {
      if (f[l.meet(a, b)] != m.meet(f[a], f[b]))
        throw lattice_error("hom does not preserve meet of " + std::to_string(a) + "," + std::to_string(b));
      if (f[l.join(a, b)] != m.join(f[a], f[b]))
        throw lattice_error("hom does not preserve join of " + std::to_string(a) + "," + std::to_string(b));
    }
}

bool is_hom(const fin_lattice& l, const fin_lattice& m, const std::vector<int>& f) {
  try {
    check_hom(l, m, f);
    return true;
  } catch (const lattice_error&) {
    return false;
  }
}

bool is_prime_filter(const fin_lattice& l, const bits& f) {
  if (f.none() || f.test(l.bot)) return false;
  if (!l.order.is_up_set(f)) return false;
  for (int a = 0; a < l.n; ++a)
    for (int b = 0; b < l.n; ++b) {
      if (f.test(a) && f.test(b) && !f.test(l.meet(a, b))) return false;
      if (f.test(l.join(a, b)) && !f.test(a) && !f.test(b)) return false;
    }
  return true;
}

std::vector<bits> prime_filters_brute(const fin_lattice& l) {
  std::vector<bits> r;
  for (auto& u : l.order.up_sets())
    if (is_prime_filter(l, u)) r.push_back(u);
  return r;
}

spectrum spec(const fin_lattice& l) {
  spectrum s;
  auto ji = l.join_irreducibles();
  for (int j : ji) s.filters.push_back(l.order.up[j]);
  int k = static_cast<int>(ji.size());
  std::vector<bits> up(k, bits(k));
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q)
      if (s.filters[p].subset_of(s.filters[q])) up[p].set(q);
  s.space = fin_poset::from_up(std::move(up));
  return s;
}

int upset_lattice::index_of(const bits& u) const {
  auto it = std::lower_bound(sets.begin(), sets.end(), u, [](const bits& a, const bits& b) {
    auto ca = a.count(), cb = b.count();
    return ca != cb ? ca < cb : a < b;
  });
  if (it == sets.end() || *it != u) return -1;
  return static_cast<int>(it - sets.begin());
}

upset_lattice k_o(const fin_poset& x) {
  upset_lattice r;
  r.sets = x.up_sets(4096);
  int n = static_cast<int>(r.sets.size());
  std::unordered_map<bits, int, bits_hash> idx;
  for (int i = 0; i < n; ++i) idx[r.sets[i]] = i;
  std::vector<bits> up(n, bits(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (r.sets[i].subset_of(r.sets[j])) up[i].set(j);
  fin_lattice& l = r.lat;
  l.n = n;
  l.order = fin_poset::from_up(std::move(up));
  l.meet_t.resize(static_cast<std::size_t>(n) * n);
  l.join_t.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      l.meet_t[i * n + j] = idx.at(r.sets[i] & r.sets[j]);
      l.join_t[i * n + j] = idx.at(r.sets[i] | r.sets[j]);
    }
  l.bot = 0;
  l.top = n - 1;
  return r;
}

std::vector<int> dual_hom(const fin_lattice& l, const spectrum& sl, const fin_lattice& m, const spectrum& sm,
                          const std::vector<int>& f) {
  check_hom(l, m, f);
  std::vector<int> out;
  for (auto& g : sm.filters) {
    bits pre(l.n);
    for (int a = 0; a < l.n; ++a)
      if (g.test(f[a])) pre.set(a);
    auto it = std::find(sl.filters.begin(), sl.filters.end(), pre);
    if (it == sl.filters.end()) throw lattice_error("preimage of a prime filter is not prime");
    out.push_back(static_cast<int>(it - sl.filters.begin()));
  }
  return out;
}

std::vector<int> left_adjoint(const fin_lattice& l, const fin_lattice& m, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != l.n) throw lattice_error("map has wrong length");
  std::vector<int> h(m.n);
  for (int b = 0; b < m.n; ++b) {
    int acc = l.top;
    bool any = false;
    for (int a = 0; a < l.n; ++a)
      if (m.leq(b, f[a])) {
        acc = l.meet(acc, a);
        any = true;
      }
    if (!any) throw lattice_error("no left adjoint: nothing above element " + std::to_string(b));
    h[b] = acc;
  }
  for (int b = 0; b < m.n; ++b)
    for (int a = 0; a < l.n; ++a)
      if (l.leq(h[b], a) != m.leq(b, f[a]))
        throw lattice_error("adjunction fails at (" + std::to_string(b) + "," + std::to_string(a) + ")");
  return h;
}

std::optional<std::pair<int, int>> check_frobenius(const fin_lattice& l, const fin_lattice& m, const std::vector<int>& f,
                                                   const std::vector<int>& h) {
  for (int b = 0; b < m.n; ++b)
    for (int a = 0; a < l.n; ++a)
      if (l.leq(h[b], a) != m.leq(b, f[a])) throw lattice_error("not an adjoint pair");
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < l.n; ++b) {
      int lhs = h[m.meet(a, f[b])];
      int rhs = l.meet(h[a], b);
      if (!l.leq(lhs, rhs)) throw lattice_error("Frobenius inequality fails; adjunction is broken");
      if (lhs != rhs) return std::make_pair(a, b);
    }
  return std::nullopt;
}

bool is_monotone(const fin_poset& x, const fin_poset& y, const std::vector<int>& g) {
  if (static_cast<int>(g.size()) != x.n) return false;
  for (int a = 0; a < x.n; ++a) {
    if (g[a] < 0 || g[a] >= y.n) return false;
    bool ok = true;
    x.up[a].for_each([&](int b) { ok = ok && y.leq(g[a], g[b]); });
    if (!ok) return false;
  }
  return true;
}

bits image(const std::vector<int>& g, const bits& s, int target_size) {
  bits r(target_size);
  s.for_each([&](int a) { r.set(g[a]); });
  return r;
}

bits preimage(const std::vector<int>& g, const bits& s) {
  bits r(g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    if (s.test(g[a])) r.set(a);
  return r;
}

bool is_open_map(const fin_poset& x, const fin_poset& y, const std::vector<int>& g) {
  if (!is_monotone(x, y, g)) throw lattice_error("map is not monotone");
  for (int a = 0; a < x.n; ++a)
    if (!y.is_up_set(image(g, x.up[a], y.n))) return false;
  return true;
}

std::string square_error(const square& s, bool need_open) {
  if (!is_monotone(s.a, s.b, s.f)) return "f is not monotone";
  if (!is_monotone(s.a, s.c, s.g)) return "g is not monotone";
  if (!is_monotone(s.b, s.d, s.h)) return "h is not monotone";
  if (!is_monotone(s.c, s.d, s.k)) return "k is not monotone";
  for (int a = 0; a < s.a.n; ++a)
    if (s.h[s.f[a]] != s.k[s.g[a]]) return "square does not commute at point " + std::to_string(a);
  if (need_open) {
    if (!is_open_map(s.a, s.b, s.f)) return "f is not open";
    if (!is_open_map(s.a, s.c, s.g)) return "g is not open";
    if (!is_open_map(s.b, s.d, s.h)) return "h is not open";
    if (!is_open_map(s.c, s.d, s.k)) return "k is not open";
  }
  return "";
}

bc_result check_bc_square(const square& s, bool exhaustive) {
  bc_result r;
  r.error = square_error(s);
  if (!r.error.empty()) {
    r.holds = false;
    return r;
  }
  auto test = [&](const bits& u) {
    bits lhs = preimage(s.k, image(s.h, u, s.d.n));
    bits rhs = image(s.g, preimage(s.f, u), s.c.n);
    if (!rhs.subset_of(lhs)) throw lattice_error("square violates the automatic Beck-Chevalley inclusion");
    return lhs.subset_of(rhs);
  };
  if (exhaustive) {
    for (auto& u : s.b.up_sets()) {
      if (!test(u)) {
        r.holds = false;
        r.witness = u;
        return r;
      }
    }
  } else {
    for (int b = 0; b < s.b.n; ++b)
      if (!test(s.b.up[b])) {
        r.holds = false;
        r.witness = s.b.up[b];
        return r;
      }
  }
  return r;
}

surj_result universal_map_surjective(const square& s) {
  surj_result r;
  std::set<std::pair<int, int>> hit;
  for (int a = 0; a < s.a.n; ++a) hit.insert({s.f[a], s.g[a]});
  for (int b = 0; b < s.b.n; ++b)
    for (int c = 0; c < s.c.n; ++c) {
      if (s.h[b] != s.k[c]) continue;
      ++r.fiber_size;
      if (!hit.count({b, c}) && r.surjective) {
        r.surjective = false;
        r.witness = std::make_pair(b, c);
      }
    }
  return r;
}

namespace {

std::string encode(const fin_poset& p, const std::vector<int>& perm) {
  // perm[new] = old
  std::string s(static_cast<std::size_t>(p.n) * p.n, '0');
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (p.leq(perm[i], perm[j])) s[i * p.n + j] = '1';
  return s;
}

}  // namespace

std::vector<int> canonical_labels(const fin_poset& p) {
  std::vector<int> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  std::vector<int> best_perm = perm;
  // only permutations that list points in a linear extension are tried
  do {
    bool ext = true;
    for (int i = 0; i < p.n && ext; ++i)
      for (int j = 0; j < i && ext; ++j)
        if (p.leq(perm[i], perm[j])) ext = false;
    if (!ext) continue;
    auto e = encode(p, perm);
    if (best.empty() || e < best) {
      best = e;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best_perm;
}

std::string canonical_form(const fin_poset& p) {
  if (p.n == 0) return "";
  return encode(p, canonical_labels(p));
}

std::optional<std::vector<int>> find_iso(const fin_poset& p, const fin_poset& q) {
  if (p.n != q.n) return std::nullopt;
  int n = p.n;
  std::vector<int> m(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> go = [&](int i) {
    if (i == n) return true;
    for (int c = 0; c < n; ++c) {
      if (used[c] || p.up[i].count() != q.up[c].count() || p.down[i].count() != q.down[c].count()) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = p.leq(i, j) == q.leq(c, m[j]) && p.leq(j, i) == q.leq(m[j], c);
      if (!ok) continue;
      m[i] = c;
      used[c] = true;
      if (go(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (go(0)) return m;
  return std::nullopt;
}

namespace {

// posets up to iso, grown by adding a new maximal point above a down-set
std::vector<fin_poset> grow(const std::vector<fin_poset>& prev, std::size_t max_upsets) {
  std::vector<fin_poset> out;
  std::set<std::string> seen;
  for (auto& p : prev) {
    // down-sets are complements of up-sets
    for (auto& u : p.up_sets()) {
      bits d = ~u;
      int n = p.n + 1;
      std::vector<bits> up(n, bits(n));
      for (int i = 0; i < p.n; ++i) {
        p.up[i].for_each([&](int j) { up[i].set(j); });
        if (d.test(i)) up[i].set(p.n);
      }
      up[p.n].set(p.n);
      auto q = fin_poset::from_up(std::move(up));
      if (max_upsets) {
        try {
          q.up_sets(max_upsets);
        } catch (const lattice_error&) {
          continue;  // more than max_upsets
        }
      }
      auto c = canonical_form(q);
      if (seen.insert(c).second) out.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace

std::vector<fin_poset> enumerate_posets(int max_n) {
  std::vector<fin_poset> all{fin_poset::discrete(0)};
  std::vector<fin_poset> level{fin_poset::discrete(0)};
  for (int n = 1; n <= max_n; ++n) {
    level = grow(level, 0);
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

std::vector<fin_lattice> enumerate_distributive_lattices(int max_size) {
  std::vector<fin_lattice> out;
  std::vector<fin_poset> level{fin_poset::discrete(0)};
  std::size_t cap = static_cast<std::size_t>(max_size);
  while (!level.empty()) {
    for (auto& p : level)
      if (p.up_sets().size() <= cap) out.push_back(k_o(p).lat);
    level = grow(level, cap);
  }
  std::stable_sort(out.begin(), out.end(), [](const fin_lattice& a, const fin_lattice& b) { return a.n < b.n; });
  return out;
}

}  // namespace coh
