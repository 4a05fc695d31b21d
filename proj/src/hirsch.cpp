#include "twext/hirsch.hpp"

#include <sstream>

namespace twext {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True:
      return "true";
    case Tri::False:
      return "false";
    default:
      return "unknown";
  }
}

HirschValue::HirschValue(Int v) : value_(std::move(v)) {
  if (sgn(value_) < 0) throw DomainError("negative Hirsch length");
}

HirschValue HirschValue::infinite() {
  HirschValue h;
  h.infinite_ = true;
  return h;
}

const Int& HirschValue::value() const {
  if (infinite_) throw DomainError("Hirsch length is infinite");
  return value_;
}

std::string HirschValue::to_string() const { return infinite_ ? "inf" : value_.get_str(); }

HirschValue operator+(const HirschValue& a, const HirschValue& b) {
  if (a.infinite_ || b.infinite_) return HirschValue::infinite();
  return HirschValue(a.value_ + b.value_);
}

HirschValue operator*(const HirschValue& a, const HirschValue& b) {
  if ((!a.infinite_ && a.value_ == 0) || (!b.infinite_ && b.value_ == 0)) return HirschValue(0);
  if (a.infinite_ || b.infinite_) return HirschValue::infinite();
  return HirschValue(a.value_ * b.value_);
}

std::string Cardinality::to_string() const {
  switch (kind) {
    case Kind::Finite:
      return value.get_str();
    case Kind::Infinite:
      return "inf";
    default:
      return "unknown";
  }
}

namespace {

Descriptor make(GroupDescriptor d) { return std::make_shared<const GroupDescriptor>(std::move(d)); }

void need(const Descriptor& d) {
  if (!d) throw DomainError("empty group descriptor");
}

Tri both(Tri a, Tri b) {
  if (a == Tri::True && b == Tri::True) return Tri::True;
  if (a == Tri::False || b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

Tri inherit(Tri a) { return a == Tri::True ? Tri::True : Tri::Unknown; }

}  // namespace

Descriptor finite_group(Int n) {
  if (n < 1) throw DomainError("finite group order must be positive");
  GroupDescriptor d{GroupDescriptor::Kind::Finite};
  d.n = std::move(n);
  return make(std::move(d));
}

Descriptor free_abelian(Int rank) {
  if (sgn(rank) < 0) throw DomainError("free abelian rank must be non-negative");
  GroupDescriptor d{GroupDescriptor::Kind::FreeAbelian};
  d.n = std::move(rank);
  return make(std::move(d));
}

Descriptor atom(std::string label, HirschValue h, Cardinality card, GroupFlags flags) {
  GroupDescriptor d{GroupDescriptor::Kind::Atom};
  d.label = std::move(label);
  d.atom_hirsch = std::move(h);
  d.atom_card = std::move(card);
  d.atom_flags = flags;
  return make(std::move(d));
}

Descriptor zinv(int p) {
  if (p < 2) throw DomainError("Z[1/p] needs p >= 2");
  // Z[1/p] / Z is locally finite, so the Hirsch length is 1
  return atom("Z[1/" + std::to_string(p) + "]", HirschValue(1), Cardinality::infinite(),
              GroupFlags{Tri::False, Tri::True, Tri::False, Tri::True});
}

Descriptor extension(Descriptor n, Descriptor q) {
  need(n);
  need(q);
  GroupDescriptor d{GroupDescriptor::Kind::Extension};
  d.children = {std::move(n), std::move(q)};
  return make(std::move(d));
}

Descriptor quotient(Descriptor g, Descriptor n) {
  need(g);
  need(n);
  GroupDescriptor d{GroupDescriptor::Kind::Quotient};
  d.children = {std::move(g), std::move(n)};
  return make(std::move(d));
}

Descriptor wreath(Descriptor k, Descriptor h) {
  need(k);
  need(h);
  GroupDescriptor d{GroupDescriptor::Kind::Wreath};
  d.children = {std::move(k), std::move(h)};
  return make(std::move(d));
}

Descriptor direct_sum(std::vector<Descriptor> summands) {
  if (summands.empty()) throw DomainError("direct sum needs at least one summand");
  for (const auto& s : summands) need(s);
  GroupDescriptor d{GroupDescriptor::Kind::DirectSum};
  d.children = std::move(summands);
  return make(std::move(d));
}

std::pair<Descriptor, Descriptor> hall_groups(int p) {
  auto h = extension(extension(direct_sum({zinv(p), zinv(p)}), zinv(p)), free_abelian(1));
  auto g = quotient(h, free_abelian(1));
  return {h, g};
}

Cardinality cardinality(const Descriptor& d) {
  using K = GroupDescriptor::Kind;
  switch (d->kind) {
    case K::Finite:
      return Cardinality::finite(d->n);
    case K::FreeAbelian:
      return d->n == 0 ? Cardinality::finite(1) : Cardinality::infinite();
    case K::Atom:
      return d->atom_card;
    case K::Extension: {
      const auto a = cardinality(d->children[0]), b = cardinality(d->children[1]);
      if (a.is_finite() && b.is_finite()) return Cardinality::finite(a.value * b.value);
      if (a.kind == Cardinality::Kind::Infinite || b.kind == Cardinality::Kind::Infinite) return Cardinality::infinite();
      return Cardinality::unknown();
    }
    case K::DirectSum: {
      Int prod = 1;
      bool unknown = false;
      for (const auto& c : d->children) {
        const auto x = cardinality(c);
        if (x.kind == Cardinality::Kind::Infinite) return Cardinality::infinite();
        if (x.kind == Cardinality::Kind::Unknown) unknown = true;
        if (x.is_finite()) prod *= x.value;
      }
      return unknown ? Cardinality::unknown() : Cardinality::finite(prod);
    }
    case K::Quotient: {
      const auto g = cardinality(d->children[0]), n = cardinality(d->children[1]);
      if (g.is_finite() && n.is_finite()) {
        if (g.value % n.value != 0) throw DomainError("quotient by a subgroup whose order does not divide");
        return Cardinality::finite(g.value / n.value);
      }
      if (g.is_finite() && n.kind == Cardinality::Kind::Infinite)
        throw DomainError("infinite normal subgroup of a finite group");
      if (g.kind == Cardinality::Kind::Infinite && n.is_finite()) return Cardinality::infinite();
      const auto hg = hirsch_length(d->children[0]);
      const auto hn = hirsch_length(d->children[1]);
      if (!hg.is_infinite() && !hn.is_infinite() && hg.value() > hn.value()) return Cardinality::infinite();
      return Cardinality::unknown();
    }
    case K::Wreath: {
      const auto k = cardinality(d->children[0]), h = cardinality(d->children[1]);
      if (k.is_trivial()) return h;
      if (h.kind == Cardinality::Kind::Infinite || k.kind == Cardinality::Kind::Infinite) return Cardinality::infinite();
      if (!k.is_finite() || !h.is_finite()) return Cardinality::unknown();
      if (h.value > 1 << 16) throw ResourceCap("wreath product cardinality too large to evaluate");
      Int out;
      mpz_pow_ui(out.get_mpz_t(), k.value.get_mpz_t(), h.value.get_ui());
      return Cardinality::finite(out * h.value);
    }
  }
  return Cardinality::unknown();
}

HirschValue hirsch_length(const Descriptor& d) {
  using K = GroupDescriptor::Kind;
  switch (d->kind) {
    case K::Finite:
      return HirschValue(0);
    case K::FreeAbelian:
      return HirschValue(d->n);
    case K::Atom:
      return d->atom_hirsch;
    case K::Extension:
      return hirsch_length(d->children[0]) + hirsch_length(d->children[1]);
    case K::DirectSum: {
      HirschValue h(0);
      for (const auto& c : d->children) h = h + hirsch_length(c);
      return h;
    }
    case K::Quotient: {
      const auto g = hirsch_length(d->children[0]), n = hirsch_length(d->children[1]);
      if (g.is_infinite() && n.is_infinite())
        throw IndeterminateHirsch("quotient of infinite Hirsch length by infinite Hirsch length");
      if (g.is_infinite()) return g;
      if (n.is_infinite() || n.value() > g.value()) throw DomainError("normal subgroup has larger Hirsch length");
      return HirschValue(g.value() - n.value());
    }
    case K::Wreath: {
      const auto hk = hirsch_length(d->children[0]);
      const auto hh = hirsch_length(d->children[1]);
      const auto card = cardinality(d->children[1]);
      if (!hk.is_infinite() && hk.value() == 0) return hh;
      if (card.kind == Cardinality::Kind::Unknown) throw IndeterminateHirsch("wreath product over a group of unknown size");
      const auto size = card.is_finite() ? HirschValue(card.value) : HirschValue::infinite();
      return hk * size + hh;
    }
  }
  throw std::logic_error("unhandled descriptor kind");
}

GroupFlags flags(const Descriptor& d) {
  using K = GroupDescriptor::Kind;
  if (cardinality(d).is_finite()) return GroupFlags::all(Tri::True);
  switch (d->kind) {
    case K::Finite:
      return GroupFlags::all(Tri::True);
    case K::FreeAbelian:
      return GroupFlags::all(Tri::True);
    case K::Atom:
      return d->atom_flags;
    case K::Extension: {
      const auto n = flags(d->children[0]), q = flags(d->children[1]);
      GroupFlags f;
      // a quotient of a finitely generated group is finitely generated, a subgroup need not be
      if (q.finitely_generated == Tri::False)
        f.finitely_generated = Tri::False;
      else if (n.finitely_generated == Tri::True && q.finitely_generated == Tri::True)
        f.finitely_generated = Tri::True;
      f.virt_polycyclic = both(n.virt_polycyclic, q.virt_polycyclic);
      f.elementary_amenable = both(n.elementary_amenable, q.elementary_amenable);
      if (n.virt_nilpotent == Tri::False || q.virt_nilpotent == Tri::False) {
        f.virt_nilpotent = Tri::False;
      } else if (n.virt_nilpotent == Tri::True && q.virt_nilpotent == Tri::True) {
        // finite-by-(f.g. virtually nilpotent) and (virtually nilpotent)-by-finite stay virtually nilpotent
        const bool finite_n = cardinality(d->children[0]).is_finite();
        const bool finite_q = cardinality(d->children[1]).is_finite();
        f.virt_nilpotent = finite_q || (finite_n && q.finitely_generated == Tri::True) ? Tri::True : Tri::Unknown;
      }
      return f;
    }
    case K::Quotient: {
      const auto g = flags(d->children[0]);
      return GroupFlags{inherit(g.finitely_generated), inherit(g.virt_nilpotent), inherit(g.virt_polycyclic),
                        inherit(g.elementary_amenable)};
    }
    case K::DirectSum: {
      GroupFlags f = GroupFlags::all(Tri::True);
      for (const auto& c : d->children) {
        const auto x = flags(c);
        f.finitely_generated = both(f.finitely_generated, x.finitely_generated);
        f.virt_nilpotent = both(f.virt_nilpotent, x.virt_nilpotent);
        f.virt_polycyclic = both(f.virt_polycyclic, x.virt_polycyclic);
        f.elementary_amenable = both(f.elementary_amenable, x.elementary_amenable);
      }
      return f;
    }
    case K::Wreath: {
      const auto k = flags(d->children[0]), h = flags(d->children[1]);
      const auto ck = cardinality(d->children[0]), ch = cardinality(d->children[1]);
      if (ck.is_trivial()) return h;
      GroupFlags f;
      f.finitely_generated = both(k.finitely_generated, h.finitely_generated);
      f.elementary_amenable = both(k.elementary_amenable, h.elementary_amenable);
      if (ch.is_finite()) {
        f.virt_nilpotent = k.virt_nilpotent;
        f.virt_polycyclic = k.virt_polycyclic;
      } else if (ch.kind == Cardinality::Kind::Infinite && ck.kind != Cardinality::Kind::Unknown) {
        // infinitely many copies of a nontrivial group: not finitely generated as a subgroup
        f.virt_nilpotent = Tri::False;
        f.virt_polycyclic = Tri::False;
      }
      return f;
    }
  }
  return GroupFlags{};
}

std::string describe(const Descriptor& d) {
  using K = GroupDescriptor::Kind;
  switch (d->kind) {
    case K::Finite:
      return "finite(" + d->n.get_str() + ")";
    case K::FreeAbelian:
      return "Z^" + d->n.get_str();
    case K::Atom:
      return d->label;
    case K::Extension:
      return "ext(" + describe(d->children[0]) + ", " + describe(d->children[1]) + ")";
    case K::Quotient:
      return "(" + describe(d->children[0]) + ") / (" + describe(d->children[1]) + ")";
    case K::Wreath:
      return "(" + describe(d->children[0]) + ") wr (" + describe(d->children[1]) + ")";
    case K::DirectSum: {
      std::string s = "sum(";
      for (std::size_t i = 0; i < d->children.size(); ++i) s += (i ? ", " : "") + describe(d->children[i]);
      return s + ")";
    }
  }
  return "?";
}

Derivation derive_hirsch(const Descriptor& d) {
  using K = GroupDescriptor::Kind;
  Derivation out{describe(d), "", hirsch_length(d).to_string(), {}};
  switch (d->kind) {
    case K::Finite:
      out.rule = "finite group";
      break;
    case K::FreeAbelian:
      out.rule = "rank of free abelian group";
      break;
    case K::Atom:
      out.rule = "axiom";
      break;
    case K::Extension:
      out.rule = "h(N) + h(Q)";
      break;
    case K::Quotient:
      out.rule = "h(G) - h(N)";
      break;
    case K::Wreath:
      out.rule = "h(K) * #H + h(H) with 0 * inf = 0, #H = " + cardinality(d->children[1]).to_string();
      break;
    case K::DirectSum:
      out.rule = "sum of summands";
      break;
  }
  for (const auto& c : d->children) out.children.push_back(derive_hirsch(c));
  return out;
}

std::string render(const Derivation& d) {
  std::ostringstream os;
  auto walk = [&](auto&& self, const Derivation& x, int depth) -> void {
    os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "h(" << x.node << ") = " << x.value << "   ["
       << x.rule << "]\n";
    for (const auto& c : x.children) self(self, c, depth + 1);
  };
  walk(walk, d, 0);
  return os.str();
}

namespace {

Int pow_ui(unsigned long base, unsigned long e) {
  Int out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

}  // namespace

Int f_bound(int n) {
  if (n < 0) throw DomainError("f is defined for n >= 0");
  if (n == 0) return 0;
  Int f = 1;
  for (int k = 2; k <= n; ++k) f = pow_ui(9, static_cast<unsigned long>(k)) * (k + 1) * (f + 1) - 1;
  return f;
}

Int f_closed_form(int n) {
  if (n < 0) throw DomainError("f is defined for n >= 0");
  if (n == 0) return 0;
  Int fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n + 1));
  const auto e = static_cast<unsigned long>((n + 2) * (n - 1) / 2);
  return fact * pow_ui(9, e) - 1;
}

Int hw_product_bound(const Int& asdim_p1, const Int& ltc_p1, const Int& dstab) {
  if (sgn(asdim_p1) < 0 || sgn(ltc_p1) < 0 || sgn(dstab) < 0) throw DomainError("bound inputs must be non-negative");
  return asdim_p1 * ltc_p1 * (dstab + 1) - 1;
}

std::pair<Int, Int> nilpotent_input_bounds(int k, int dim_x) {
  if (k < 0 || dim_x < 0) throw DomainError("bound inputs must be non-negative");
  const Int p = pow_ui(3, static_cast<unsigned long>(k));
  return {p, p * (dim_x + 1)};
}

Int twisted_bound(int h_g, int h_h2) {
  if (h_g < 0 || h_h2 < 0) throw DomainError("Hirsch lengths must be non-negative");
  return f_bound(h_g + h_h2);
}

Int wreath_bound_finite_K(int k) {
  if (k < 0) throw DomainError("growth degree must be non-negative");
  return 2 * pow_ui(9, static_cast<unsigned long>(k));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite:
      return "finite";
    case Verdict::Infinite:
      return "infinite";
    default:
      return "out_of_hypotheses";
  }
}

Verdict wreath_dimnuc_verdict(const Descriptor& k, const Descriptor& h) {
  const auto fk = flags(k), fh = flags(h);
  if (fk.virt_polycyclic != Tri::True || fh.finitely_generated != Tri::True || fh.virt_nilpotent != Tri::True)
    return Verdict::OutOfHypotheses;
  const auto ck = cardinality(k), ch = cardinality(h);
  if (ck.is_finite() || ch.is_finite()) return Verdict::Finite;
  if (ck.kind == Cardinality::Kind::Unknown || ch.kind == Cardinality::Kind::Unknown) return Verdict::OutOfHypotheses;
  return Verdict::Infinite;
}

Verdict wreath_dr_verdict(const Descriptor& k, const Descriptor& h) {
  const auto fk = flags(k), fh = flags(h);
  if (fk.finitely_generated != Tri::True || fk.virt_nilpotent != Tri::True || fh.finitely_generated != Tri::True ||
      fh.virt_nilpotent != Tri::True)
    return Verdict::OutOfHypotheses;
  const auto ck = cardinality(k), ch = cardinality(h);
  if (ch.is_finite() || ck.is_trivial()) return Verdict::Finite;
  if (ck.kind == Cardinality::Kind::Unknown || ch.kind == Cardinality::Kind::Unknown) return Verdict::OutOfHypotheses;
  return Verdict::Infinite;
}

}  // namespace twext
