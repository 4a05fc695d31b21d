#include "twext/witness.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace twext {

namespace {

Elem power(const ElementOracle& o, const Elem& x, std::int64_t k) {
  Elem out = o.identity;
  for (std::int64_t i = 0; i < k; ++i) out = o.multiply(out, x);
  return out;
}

std::int64_t mod2(std::int64_t x) { return ((x % 2) + 2) % 2; }

// 0, 1, -1, 2, -2, ...
std::int64_t zigzag(std::int64_t i) { return i % 2 ? (i + 1) / 2 : -(i / 2); }

}  // namespace

ElementOracle integers_oracle() {
  ElementOracle o;
  o.name = "Z";
  o.multiply = [](const Elem& a, const Elem& b) { return Elem{a[0] + b[0]}; };
  o.invert = [](const Elem& a) { return Elem{-a[0]}; };
  o.identity = {0};
  o.generators = {{1}};
  o.g = {1};
  o.coset_rep = [](std::int64_t) { return Elem{0}; };
  return o;
}

ElementOracle z2_oracle() {
  ElementOracle o;
  o.name = "Z2";
  o.multiply = [](const Elem& a, const Elem& b) { return Elem{a[0] + b[0], a[1] + b[1]}; };
  o.invert = [](const Elem& a) { return Elem{-a[0], -a[1]}; };
  o.identity = {0, 0};
  o.generators = {{1, 0}, {0, 1}};
  o.g = {1, 0};
  o.coset_rep = [](std::int64_t i) { return Elem{0, zigzag(i)}; };
  return o;
}

// (a, s) is x -> s x + a with s = +-1
ElementOracle dinf_oracle() {
  ElementOracle o;
  o.name = "Dinf";
  o.multiply = [](const Elem& a, const Elem& b) { return Elem{a[0] + a[1] * b[0], a[1] * b[1]}; };
  o.invert = [](const Elem& a) { return Elem{-a[1] * a[0], a[1]}; };
  o.identity = {0, 1};
  o.generators = {{1, 1}, {0, -1}};
  o.g = {1, 1};
  o.coset_rep = [](std::int64_t i) {
    if (i > 1) throw DomainError("<g> has index 2 in Dinf");
    return i == 0 ? Elem{0, 1} : Elem{0, -1};
  };
  return o;
}

ElementOracle z_times_c2_oracle() {
  ElementOracle o;
  o.name = "ZxZ2";
  o.multiply = [](const Elem& a, const Elem& b) { return Elem{a[0] + b[0], mod2(a[1] + b[1])}; };
  o.invert = [](const Elem& a) { return Elem{-a[0], a[1]}; };
  o.identity = {0, 0};
  o.generators = {{1, 0}, {0, 1}};
  o.g = {0, 1};
  o.g_order = 2;
  o.coset_rep = [](std::int64_t i) { return Elem{zigzag(i), 0}; };
  return o;
}

std::vector<std::string> oracle_names() { return {"Z", "Z2", "Dinf", "ZxZ2"}; }

ElementOracle oracle_by_name(const std::string& name) {
  if (name == "Z") return integers_oracle();
  if (name == "Z2") return z2_oracle();
  if (name == "Dinf") return dinf_oracle();
  if (name == "ZxZ2") return z_times_c2_oracle();
  throw DomainError("unknown oracle group '" + name + "'");
}

std::vector<Elem> word_ball(const ElementOracle& o, int radius) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  std::vector<Elem> steps;
  for (const auto& s : o.generators) {
    steps.push_back(s);
    steps.push_back(o.invert(s));
  }
  std::set<Elem> seen{o.identity};
  std::vector<Elem> frontier{o.identity};
  for (int r = 0; r < radius; ++r) {
    std::vector<Elem> next;
    for (const auto& x : frontier)
      for (const auto& s : steps) {
        auto y = o.multiply(x, s);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

void check_oracle(const ElementOracle& o, int radius) {
  if (o.g == o.identity) throw OracleInconsistent(o.name + ": g is the identity");
  const auto ball = word_ball(o, radius);
  for (const auto& a : ball) {
    if (o.multiply(a, o.identity) != a || o.multiply(o.identity, a) != a)
      throw OracleInconsistent(o.name + ": identity law fails at " + to_string(a));
    if (o.multiply(a, o.invert(a)) != o.identity)
      throw OracleInconsistent(o.name + ": inverse law fails at " + to_string(a));
    for (const auto& b : ball)
      for (const auto& c : ball)
        if (o.multiply(o.multiply(a, b), c) != o.multiply(a, o.multiply(b, c)))
          throw OracleInconsistent(o.name + ": not associative at " + to_string(a) + ", " + to_string(b) + ", " +
                                   to_string(c));
  }
  if (o.g_order) {
    const auto m = *o.g_order;
    if (m < 2) throw OracleInconsistent(o.name + ": order of g must exceed 1");
    for (std::int64_t k = 1; k < m; ++k)
      if (power(o, o.g, k) == o.identity) throw OracleInconsistent(o.name + ": g has smaller order than declared");
    if (power(o, o.g, m) != o.identity) throw OracleInconsistent(o.name + ": g^m is not the identity");
  }
}

WitnessSet finite_subset_witness(const ElementOracle& o, int n) {
  if (n < 1) throw DomainError("n must be positive");
  check_oracle(o);
  WitnessSet w;
  if (!o.g_order) {
    Elem x = o.identity;
    for (int j = 0; j < n; ++j) {
      w.elements.push_back(x);
      x = o.multiply(x, o.g);
    }
    return w;
  }
  w.construction = 2;
  std::set<Elem> seen;
  for (int i = 0; i < n; ++i) {
    const auto gi = o.coset_rep(i);
    if (i == 0 && gi != o.identity) throw OracleInconsistent(o.name + ": first coset representative is not e");
    Elem x = gi;
    for (std::int64_t k = 0; k < *o.g_order; ++k) {
      if (!seen.insert(x).second) throw OracleInconsistent(o.name + ": coset representatives are not distinct");
      if (x != o.identity) w.elements.push_back(x);
      x = o.multiply(x, o.g);
    }
  }
  return w;
}

WitnessReport verify_witness(const ElementOracle& o, const WitnessSet& f, int radius) {
  WitnessReport rep;
  rep.radius = radius;
  const std::set<Elem> fs(f.elements.begin(), f.elements.end());
  for (const auto& h : word_ball(o, radius)) {
    if (h == o.identity) continue;
    ++rep.checked;
    bool moved = false;
    for (const auto& x : f.elements)
      if (!fs.count(o.multiply(h, x))) {
        moved = true;
        break;
      }
    // a left translate of a finite set is the same set iff it lies inside it
    if (!moved && !rep.violation) {
      rep.passed = false;
      rep.violation = h;
    }
  }
  return rep;
}

std::string to_string(const Elem& e) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ')';
  return os.str();
}

}  // namespace twext
