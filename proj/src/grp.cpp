#include "twext/grp.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

namespace twext {

namespace {

std::vector<int> flatten(const std::vector<std::vector<int>>& table) {
  const auto m = table.size();
  if (m == 0) throw DomainError("group table is empty");
  std::vector<int> flat;
  flat.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (table[i].size() != m)
      throw DomainError("group table row " + std::to_string(i) + " has wrong length");
    flat.insert(flat.end(), table[i].begin(), table[i].end());
  }
  return flat;
}

}  // namespace

FiniteGroup::FiniteGroup(const std::vector<std::vector<int>>& table, std::string name)
    : FiniteGroup(static_cast<int>(table.size()), flatten(table), std::move(name), true) {}

FiniteGroup::FiniteGroup(int order, std::vector<int> flat, std::string name, bool check)
    : order_(order), table_(std::move(flat)), name_(std::move(name)) {
  if (order_ <= 0) throw DomainError("group order must be positive");
  if (check) validate();
  inverse_.assign(order_, -1);
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        break;
      }
}

void FiniteGroup::validate() const {
  const int m = order_;
  if (table_.size() != static_cast<std::size_t>(m) * m) throw DomainError("group table has wrong size");
  for (int v : table_)
    if (v < 0 || v >= m) throw DomainError("group table entry out of range");
  for (int j = 0; j < m; ++j)
    if (mul(0, j) != j || mul(j, 0) != j) throw DomainError("index 0 is not a two-sided identity");
  std::vector<char> seen(m);
  for (int i = 0; i < m; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < m; ++j) {
      if (seen[mul(i, j)]) throw DomainError("row " + std::to_string(i) + " is not a permutation");
      seen[mul(i, j)] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < m; ++j) {
      if (seen[mul(j, i)]) throw DomainError("column " + std::to_string(i) + " is not a permutation");
      seen[mul(j, i)] = 1;
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int ij = mul(i, j);
      for (int k = 0; k < m; ++k)
        if (mul(ij, k) != mul(i, mul(j, k)))
          throw DomainError("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                            "," + std::to_string(k) + ")");
    }
}

FiniteGroup FiniteGroup::from_table_reindexed(const std::vector<std::vector<int>>& table, std::string name) {
  auto flat = flatten(table);
  const int m = static_cast<int>(table.size());
  for (int v : flat)
    if (v < 0 || v >= m) throw DomainError("group table entry out of range");
  int e = -1;
  for (int i = 0; i < m && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) ok = flat[i * m + j] == j && flat[j * m + i] == j;
    if (ok) e = i;
  }
  if (e < 0) throw DomainError("group table has no identity element");
  if (e != 0) {
    std::vector<int> relabel(m);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::swap(relabel[0], relabel[e]);
    std::vector<int> out(flat.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out[relabel[i] * m + relabel[j]] = relabel[flat[i * m + j]];
    flat = std::move(out);
  }
  return FiniteGroup(m, std::move(flat), std::move(name), true);
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

int FiniteGroup::power(int a, int k) const {
  int x = 0;
  for (int i = 0; i < k; ++i) x = mul(x, a);
  return x;
}

bool FiniteGroup::is_abelian() const {
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j)
      if (mul(i, j) != mul(j, i)) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> out(order_);
  for (int i = 0; i < order_; ++i) out[i].assign(table_.begin() + i * order_, table_.begin() + (i + 1) * order_);
  return out;
}

bool Subgroup::contains(int g) const { return std::binary_search(members.begin(), members.end(), g); }

int Subgroup::position(int g) const {
  auto it = std::lower_bound(members.begin(), members.end(), g);
  if (it == members.end() || *it != g) return -1;
  return static_cast<int>(it - members.begin());
}

bool is_homomorphism(const FiniteGroup& dom, const FiniteGroup& cod, const Homomorphism& f) {
  if (static_cast<int>(f.map.size()) != dom.order() || f.map[0] != 0) return false;
  for (int v : f.map)
    if (v < 0 || v >= cod.order()) return false;
  for (int i = 0; i < dom.order(); ++i)
    for (int j = 0; j < dom.order(); ++j)
      if (f(dom.mul(i, j)) != cod.mul(f(i), f(j))) return false;
  return true;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup h{std::move(members)};
  if (h.members.empty() || h.members.front() != 0) throw DomainError("subgroup must contain the identity");
  if (h.members.back() >= g.order()) throw DomainError("subgroup member out of range");
  for (int a : h.members) {
    if (!h.contains(g.inv(a))) throw DomainError("subgroup not closed under inverses");
    for (int b : h.members)
      if (!h.contains(g.mul(a, b))) throw DomainError("subgroup not closed under multiplication");
  }
  return h;
}

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const int> generators) {
  std::vector<char> in(g.order());
  std::vector<int> members{0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (int s : generators) {
      const int x = g.mul(members[i], s);
      if (!in[x]) {
        in[x] = 1;
        members.push_back(x);
      }
    }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

Subgroup trivial_subgroup() { return Subgroup{{0}}; }

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{std::move(all)};
}

bool is_normal(const FiniteGroup& g, const Subgroup& n) {
  for (int x = 0; x < g.order(); ++x)
    for (int a : n.members)
      if (!n.contains(g.mul(g.mul(x, a), g.inv(x)))) return false;
  return true;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h, std::string name) {
  const int k = h.order();
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t[i][j] = h.position(g.mul(h.members[i], h.members[j]));
  return FiniteGroup(t, std::move(name));
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier;
  for (int x = 0; x < g.order(); ++x) {
    const int gen[] = {x};
    auto s = generated_subgroup(g, gen).members;
    if (found.insert(s).second) frontier.push_back(s);
  }
  std::vector<std::vector<int>> cyclic_subs(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& s : frontier)
      for (const auto& c : cyclic_subs) {
        if (std::includes(s.begin(), s.end(), c.begin(), c.end())) continue;
        std::vector<int> gens(s);
        gens.insert(gens.end(), c.begin(), c.end());
        auto j = generated_subgroup(g, gens).members;
        if (found.insert(j).second) next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (const auto& s : found) out.push_back(Subgroup{s});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members < b.members;
  });
  return out;
}

namespace {

FiniteGroup trusted(int m, std::vector<int> flat, std::string name) {
  return FiniteGroup::from_table_reindexed([&] {
    std::vector<std::vector<int>> t(m);
    for (int i = 0; i < m; ++i) t[i].assign(flat.begin() + i * m, flat.begin() + (i + 1) * m);
    return t;
  }(), std::move(name));
}

void check_order(long long m) {
  if (m <= 0) throw DomainError("group order must be positive");
  if (m > kMaxBuiltinOrder)
    throw ResourceCap("group order " + std::to_string(m) + " exceeds cap " + std::to_string(kMaxBuiltinOrder));
}

}  // namespace

FiniteGroup cyclic(int n) {
  check_order(n);
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
  return trusted(n, std::move(t), "cyclic(" + std::to_string(n) + ")");
}

FiniteGroup klein() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) t[x][y] = x ^ y;
  return FiniteGroup(t, "klein");
}

FiniteGroup dihedral(int n) {
  if (n < 1) throw DomainError("dihedral(n) needs n >= 1");
  check_order(2LL * n);
  const int m = 2 * n;
  std::vector<int> t(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const int a = x % n, f = x / n, b = y % n, g = y / n;
      const int k = ((a + (f ? -b : b)) % n + n) % n;
      t[x * m + y] = k + n * ((f + g) % 2);
    }
  return trusted(m, std::move(t), "dihedral(" + std::to_string(n) + ")");
}

FiniteGroup quaternion8() {
  // unit products in the basis 1, i, j, k: (sign, unit)
  static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<int> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int p = x / 2, s = x % 2, q = y / 2, r = y % 2;
      t[x * 8 + y] = 2 * unit[p][q] + ((s + r + sign[p][q]) % 2);
    }
  return trusted(8, std::move(t), "quaternion8");
}

FiniteGroup symmetric(int n) {
  if (n < 1 || n > 5) throw DomainError("symmetric(n) needs 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
  const int m = static_cast<int>(perms.size());
  std::vector<int> t(static_cast<std::size_t>(m) * m);
  std::vector<int> c(n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (int x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];
      t[i * m + j] = index.at(c);
    }
  return trusted(m, std::move(t), "symmetric(" + std::to_string(n) + ")");
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  check_order(static_cast<long long>(a.order()) * b.order());
  const int p = a.order(), q = b.order(), m = p * q;
  std::vector<int> t(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) t[x * m + y] = a.mul(x / q, y / q) * q + b.mul(x % q, y % q);
  return trusted(m, std::move(t), "direct_product(" + a.name() + "," + b.name() + ")");
}

FiniteGroup semidirect(const FiniteGroup& n, const FiniteGroup& h, const std::vector<std::vector<int>>& action) {
  check_order(static_cast<long long>(n.order()) * h.order());
  const int p = n.order(), q = h.order(), m = p * q;
  if (static_cast<int>(action.size()) != q) throw DomainError("semidirect action needs one automorphism per element");
  std::vector<int> ident(p);
  std::iota(ident.begin(), ident.end(), 0);
  if (action[0] != ident) throw DomainError("semidirect action of the identity must be trivial");
  for (int s = 0; s < q; ++s) {
    if (!is_homomorphism(n, n, Homomorphism{action[s]})) throw DomainError("semidirect action is not an endomorphism");
    auto sorted = action[s];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != ident) throw DomainError("semidirect action is not bijective");
    for (int r = 0; r < q; ++r)
      for (int x = 0; x < p; ++x)
        if (action[h.mul(s, r)][x] != action[s][action[r][x]])
          throw DomainError("semidirect action is not a homomorphism into Aut(N)");
  }
  std::vector<int> t(static_cast<std::size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const int n1 = x / q, h1 = x % q, n2 = y / q, h2 = y % q;
      t[x * m + y] = n.mul(n1, action[h1][n2]) * q + h.mul(h1, h2);
    }
  return trusted(m, std::move(t), "semidirect(" + n.name() + "," + h.name() + ")");
}

FiniteGroup wreath(const FiniteGroup& k, const FiniteGroup& h) {
  const int p = k.order(), q = h.order();
  long long funcs = 1;
  for (int i = 0; i < q; ++i) {
    funcs *= p;
    check_order(funcs * q);
  }
  const int nf = static_cast<int>(funcs), m = nf * q;
  auto decode = [&](int code) {
    std::vector<int> f(q);
    for (int x = 0; x < q; ++x, code /= p) f[x] = code % p;
    return f;
  };
  auto encode = [&](const std::vector<int>& f) {
    int code = 0;
    for (int x = q - 1; x >= 0; --x) code = code * p + f[x];
    return code;
  };
  std::vector<std::vector<int>> fs(nf);
  for (int c = 0; c < nf; ++c) fs[c] = decode(c);
  std::vector<int> t(static_cast<std::size_t>(m) * m);
  std::vector<int> prod(q);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int h1 = a % q, h2 = b % q;
      const auto& f1 = fs[a / q];
      const auto& f2 = fs[b / q];
      // (f1,h1)(f2,h2) = (f1 * h1.f2, h1 h2) with (h.f)(x) = f(h^-1 x)
      for (int x = 0; x < q; ++x) prod[x] = k.mul(f1[x], f2[h.mul(h.inv(h1), x)]);
      t[a * m + b] = h.mul(h1, h2) + q * encode(prod);
    }
  return trusted(m, std::move(t), "wreath(" + k.name() + "," + h.name() + ")");
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw DomainError(std::string("group expression: expected '") + c + "' at position " + std::to_string(pos));
  }
  std::string ident() {
    skip();
    const auto start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (start == pos) throw DomainError("group expression: expected a name at position " + std::to_string(pos));
    return std::string(s.substr(start, pos - start));
  }
  int integer() {
    skip();
    const auto start = pos;
    if (pos < s.size() && s[pos] == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    const auto text = std::string(s.substr(start, pos - start));
    if (text.empty() || text == "-") throw DomainError("group expression: expected an integer at position " + std::to_string(start));
    if (text.size() > 9) throw DomainError("group expression: integer too large");
    return std::stoi(text);
  }

  FiniteGroup group() {
    std::string name = ident();
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "klein" || lower == "v4") return klein();
    if (lower == "quaternion8" || lower == "q8") return quaternion8();
    if (lower == "d4") return dihedral(4);
    if (lower == "s3") return symmetric(3);
    if (lower == "trivial") return cyclic(1);
    if (lower.size() > 1 && lower[0] == 'c' &&
        std::all_of(lower.begin() + 1, lower.end(), [](unsigned char c) { return std::isdigit(c); }))
      return cyclic(std::stoi(lower.substr(1)));
    if (lower == "cyclic" || lower == "dihedral" || lower == "symmetric") {
      expect('(');
      const int n = integer();
      expect(')');
      if (lower == "cyclic") return cyclic(n);
      if (lower == "dihedral") return dihedral(n);
      return symmetric(n);
    }
    if (lower == "direct_product" || lower == "wreath") {
      expect('(');
      auto a = group();
      expect(',');
      auto b = group();
      expect(')');
      return lower == "wreath" ? wreath(a, b) : direct_product(a, b);
    }
    if (lower == "semidirect") {
      expect('(');
      const auto n = group();
      expect(',');
      const auto h = group();
      expect(',');
      const int k = integer();
      expect(')');
      return semidirect_cyclic(n, h, k);
    }
    throw DomainError("unknown group name '" + name + "'");
  }

  // The generator (index 1) of a cyclic H acts on a cyclic N by x -> kx.
  static FiniteGroup semidirect_cyclic(const FiniteGroup& n, const FiniteGroup& h, int k) {
    if (n.name().rfind("cyclic(", 0) != 0 || h.name().rfind("cyclic(", 0) != 0)
      throw DomainError("semidirect(A,B,k) expects cyclic A and B");
    const int p = n.order(), q = h.order();
    const int kk = ((k % p) + p) % p;
    std::vector<std::vector<int>> action(q, std::vector<int>(p));
    for (int s = 0; s < q; ++s) {
      long long mult = 1;
      for (int i = 0; i < s; ++i) mult = mult * kk % p;
      for (int x = 0; x < p; ++x) action[s][x] = static_cast<int>(mult * x % p);
    }
    auto g = semidirect(n, h, action);
    g.set_name("semidirect(" + n.name() + "," + h.name() + "," + std::to_string(k) + ")");
    return g;
  }
};

}  // namespace

FiniteGroup builtin(std::string_view expr) {
  Parser p{expr};
  auto g = p.group();
  p.skip();
  if (p.pos != expr.size()) throw DomainError("group expression: trailing characters in '" + std::string(expr) + "'");
  return g;
}

Subgroup center(const FiniteGroup& g) {
  std::vector<int> z;
  for (int a = 0; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return Subgroup{std::move(z)};
}

QuotientResult quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw DomainError("quotient: subgroup is not normal");
  const int m = g.order();
  std::vector<int> coset(m, -1), lift;
  for (int x = 0; x < m; ++x) {
    if (coset[x] >= 0) continue;
    const int id = static_cast<int>(lift.size());
    lift.push_back(x);
    for (int a : n.members) coset[g.mul(x, a)] = id;
  }
  const int k = static_cast<int>(lift.size());
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t[i][j] = coset[g.mul(lift[i], lift[j])];
  return QuotientResult{FiniteGroup(t, g.name().empty() ? std::string{} : g.name() + "/N"), Homomorphism{coset},
                        std::move(lift)};
}

std::vector<int> element_order_profile(const FiniteGroup& g) {
  std::vector<int> out(g.order());
  for (int a = 0; a < g.order(); ++a) out[a] = g.element_order(a);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> generating_set(const FiniteGroup& g) {
  std::vector<int> elems(g.order());
  std::iota(elems.begin(), elems.end(), 0);
  std::stable_sort(elems.begin(), elems.end(),
                   [&](int a, int b) { return g.element_order(a) > g.element_order(b); });
  std::vector<int> gens;
  Subgroup cur = trivial_subgroup();
  for (int x : elems) {
    if (cur.order() == g.order()) break;
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = generated_subgroup(g, gens);
  }
  return gens;
}

bool is_isomorphic_small(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() > kMaxIsomorphismOrder || h.order() > kMaxIsomorphismOrder)
    throw ResourceCap("isomorphism test is capped at order " + std::to_string(kMaxIsomorphismOrder));
  if (g.order() != h.order()) return false;
  if (element_order_profile(g) != element_order_profile(h)) return false;
  const int m = g.order();
  const auto gens = generating_set(g);
  std::vector<int> img(gens.size());

  auto extend = [&]() -> bool {
    std::vector<int> map(m, -1);
    std::vector<char> used(m);
    map[0] = 0;
    used[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int x = queue[qi];
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const int y = g.mul(x, gens[s]);
        const int fy = h.mul(map[x], img[s]);
        if (map[y] < 0) {
          if (used[fy]) return false;
          map[y] = fy;
          used[fy] = 1;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return false;
        }
      }
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == gens.size()) return extend();
    const int want = g.element_order(gens[depth]);
    for (int y = 1; y < m; ++y) {
      if (h.element_order(y) != want) continue;
      img[depth] = y;
      if (self(self, depth + 1)) return true;
    }
    return false;
  };
  if (gens.empty()) return true;
  return search(search, 0);
}

}  // namespace twext
