#include "twext/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "twext/centralext.hpp"
#include "twext/cocycle.hpp"
#include "twext/homology.hpp"
#include "twext/staralg.hpp"
#include "twext/witness.hpp"

namespace twext::cli {

using nlohmann::json;

namespace {

json parse_text(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
  if (!inline_json) {
    std::ifstream in(arg);
    if (!in) throw InputError("", "cannot open '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("", e.what());
  }
}

bool looks_like_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return true;
  return arg.size() > 5 && arg.substr(arg.size() - 5) == ".json" && std::filesystem::exists(arg);
}

const json& field(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr.empty() ? "/" : ptr, "expected an object");
  if (!j.contains(key)) throw InputError(ptr + "/" + key, "missing field");
  return j.at(key);
}

std::int64_t as_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw InputError(ptr, "expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t as_nonneg(const json& j, const std::string& ptr) {
  const auto v = as_int(j, ptr);
  if (v < 0) throw InputError(ptr, "expected a non-negative integer");
  return v;
}

json big(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

json invariants_json(const AbelianInvariants& a) { return {{"torsion", a.torsion}, {"free_rank", a.free_rank}}; }

json angles_json(const std::vector<Angle>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

json profile_json(const BlockProfile& p) { return {{"blocks", p.blocks}, {"dim", p.dim}, {"seed", p.seed}}; }

json tri_json(Tri t) {
  if (t == Tri::Unknown) return nullptr;
  return t == Tri::True;
}

Tri tri_from(const json& j, const std::string& ptr) {
  if (j.is_null()) return Tri::Unknown;
  if (!j.is_boolean()) throw InputError(ptr, "expected true, false or null");
  return j.get<bool>() ? Tri::True : Tri::False;
}

json flags_json(const GroupFlags& f) {
  return {{"fg", tri_json(f.finitely_generated)},
          {"vn", tri_json(f.virt_nilpotent)},
          {"vp", tri_json(f.virt_polycyclic)},
          {"ea", tri_json(f.elementary_amenable)}};
}

std::string group_label(const FiniteGroup& g, const std::string& arg) {
  if (!g.name().empty()) return g.name();
  return looks_like_json(arg) ? "G" : arg;
}

Cocycle2 load_cocycle(const std::string& arg, const FiniteGroup& g) {
  if (!looks_like_json(arg)) return named_cocycle(arg, g);
  const auto j = parse_text(arg);
  if (j.contains("group")) {
    const auto& gj = j.at("group");
    const auto other = gj.is_string() ? builtin(gj.get<std::string>()) : group_from_json(gj, "/group");
    if (!(other == g)) throw InputError("/group", "does not match the selected group");
  }
  const auto& rows = field(j, "angles", "");
  if (!rows.is_array() || static_cast<int>(rows.size()) != g.order())
    throw InputError("/angles", "expected " + std::to_string(g.order()) + " rows");
  std::vector<std::vector<Angle>> table;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto ptr = "/angles/" + std::to_string(r);
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != g.order())
      throw InputError(ptr, "expected " + std::to_string(g.order()) + " entries");
    std::vector<Angle> row;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const auto& v = rows[r][c];
      const auto cptr = ptr + "/" + std::to_string(c);
      try {
        if (v.is_string())
          row.push_back(Angle::parse(v.get<std::string>()));
        else
          row.push_back(Angle(as_int(v, cptr), 1));
      } catch (const InputError&) {
        throw;
      } catch (const DomainError& e) {
        throw InputError(cptr, e.what());
      }
    }
    table.push_back(std::move(row));
  }
  return check_cocycle(g, table);
}

StarAlgebra parse_algebra(const std::string& s) {
  if (s == "C") return diagonal_algebra(1);
  if (s.size() > 1 && (s[0] == 'M' || s[0] == 'D')) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(s.substr(1), &used);
      if (used != s.size() - 1) k = 0;
    } catch (const std::logic_error&) {
    }
    if (k >= 1) return s[0] == 'M' ? matrix_algebra(k) : diagonal_algebra(k);
  }
  throw DomainError("unknown algebra '" + s + "' (use C, M<k> or D<k>)");
}

struct Options {
  std::string group, cocycle, descriptor, k_desc, h_desc, algebra = "C", invariant = "dimnuc";
  std::vector<int> subgroup;
  std::uint64_t seed = 0;
  bool blocks_only = false, random = false;
  int max_dim = 4, n = 0, radius = 20;
  int f = -1, wreath = -1;
  std::vector<std::string> hw;
  std::vector<int> twisted, nilpotent;
};

SplittingData splitting_for(const FiniteGroup& g, std::uint64_t seed) {
  return seed == 0 ? make_splitting(g) : make_splitting(g, seed);
}

json cmd_extend(const Options& o, std::ostream& err) {
  const auto g = load_group(o.group);
  const auto split = splitting_for(g, o.seed);
  const auto ext = build_extension(g, split);
  const auto cls = classify_extension(ext);
  json fibers = json::array();
  for (const auto& chi : characters_of_h2(split.h2)) {
    const auto p = block_profile(fiber_of_extension(ext, chi), o.seed);
    fibers.push_back({{"chi", angles_json(chi.values)}, {"blocks", p.blocks}});
    err << "chi = [";
    for (std::size_t i = 0; i < chi.values.size(); ++i) err << (i ? ", " : "") << chi.values[i];
    err << "]: fiber of dimension " << p.dim << "\n";
  }
  err << "E has order " << ext.total.order() << ", classified as " << cls.label << "\n";
  return {{"base", group_label(g, o.group)},
          {"h2", invariants_json(ext.h2)},
          {"class", cls.label},
          {"order4_lifts", cls.order4_lifts},
          {"fibers", fibers}};
}

json cmd_classify(const Options& o) {
  const auto g = load_group(o.group);
  const auto ext = build_extension(g, splitting_for(g, o.seed));
  const auto cls = classify_extension(ext);
  const auto counts = count_extension_classes(g);
  return {{"base", group_label(g, o.group)},
          {"order", ext.total.order()},
          {"class", cls.label},
          {"fingerprint", cls.fingerprint},
          {"ext_strong", invariants_json(counts.strong)},
          {"ext_weak", invariants_json(counts.weak)}};
}

json cmd_twist(const Options& o) {
  const auto g = load_group(o.group);
  const auto omega = load_cocycle(o.cocycle.empty() ? "trivial" : o.cocycle, g);
  const auto p = block_profile(twisted_group_algebra(g, omega), o.seed);
  if (o.blocks_only) return {{"blocks", p.blocks}};
  const auto split = make_splitting(g);
  return {{"group", group_label(g, o.group)},
          {"profile", profile_json(p)},
          {"character", angles_json(induced_character(omega, split).values)}};
}

json cmd_fibers(const Options& o) {
  const auto g = load_group(o.group);
  const auto n = o.subgroup.empty() ? center(g) : make_subgroup(g, o.subgroup);
  json fibers = json::array();
  bool all = true;
  for (const auto& f : fiber_decomposition(g, n, o.seed)) {
    fibers.push_back({{"chi", angles_json(f.chi.values)}, {"blocks", f.profile.blocks}, {"matches", f.matches}});
    all = all && f.matches;
  }
  return {{"group", group_label(g, o.group)}, {"normal", n.members}, {"fibers", fibers}, {"ok", all}};
}

json cmd_crossed(const Options& o) {
  const auto f = load_group(o.group);
  std::mt19937_64 rng(o.seed);
  TwistedSystem sys;
  if (o.random)
    sys = random_system(f, rng, o.max_dim);
  else if (o.cocycle.empty())
    sys = trivial_system(parse_algebra(o.algebra), f);
  else
    sys = scalar_system(parse_algebra(o.algebra), load_cocycle(o.cocycle, f));
  const auto p = block_profile(crossed_product(sys), o.seed);
  return {{"group", group_label(f, o.group)},
          {"algebra", sys.algebra.label},
          {"algebra_dim", sys.algebra.dim()},
          {"profile", profile_json(p)}};
}

json cmd_imprimitivity(const Options& o) {
  const auto g = load_group(o.group);
  const auto h = make_subgroup(g, o.subgroup.empty() ? std::vector<int>{0} : o.subgroup);
  std::mt19937_64 rng(o.seed);
  const auto sys = random_system(subgroup_as_group(g, h), rng, o.max_dim);
  const auto r = verify_imprimitivity(g, h, sys, o.seed);
  return {{"group", group_label(g, o.group)},
          {"subgroup", h.members},
          {"algebra", sys.algebra.label},
          {"index", r.index},
          {"big", profile_json(r.big)},
          {"small", profile_json(r.small)},
          {"dims_match", r.dims_match},
          {"profiles_match", r.profiles_match},
          {"ok", r.ok()}};
}

json cmd_stabilize(const Options& o) {
  const auto f = load_group(o.group);
  std::mt19937_64 rng(o.seed);
  const auto sys = random_system(f, rng, o.max_dim);
  const auto r = verify_stabilization(sys, o.seed);
  return {{"group", group_label(f, o.group)},
          {"algebra", sys.algebra.label},
          {"action_ok", r.action_defect < kIdentityTol},
          {"conjugation_ok", r.conjugation_defect < kIdentityTol},
          {"cocycle_ok", r.cocycle_defect < kIdentityTol},
          {"left", profile_json(r.left)},
          {"right", profile_json(r.right)},
          {"ok", r.ok()}};
}

json hirsch_json(const HirschValue& h) {
  if (h.is_infinite()) return "inf";
  return big(h.value());
}

json cmd_hirsch(const Options& o, std::ostream& err) {
  const auto d = load_descriptor(o.descriptor);
  const auto deriv = derive_hirsch(d);
  err << render(deriv);
  return {{"group", describe(d)},
          {"hirsch", hirsch_json(hirsch_length(d))},
          {"cardinality", cardinality(d).to_string()},
          {"flags", flags_json(flags(d))}};
}

json cmd_bound(const Options& o, std::ostream& err) {
  if (o.f >= 0) {
    const auto r = f_bound(o.f);
    const auto c = f_closed_form(o.f);
    if (r != c) throw std::logic_error("f recursion and closed form disagree");
    err << "f(" << o.f << ") = " << r.get_str() << " (recursion and closed form agree)\n";
    return big(r);
  }
  if (!o.hw.empty()) {
    Int v[3];
    for (int i = 0; i < 3; ++i) {
      if (v[i].set_str(o.hw[i], 10) != 0) throw DomainError("--hw expects integers");
    }
    const auto r = hw_product_bound(v[0], v[1], v[2]);
    err << v[0].get_str() << " * " << v[1].get_str() << " * (" << v[2].get_str() << " + 1) - 1 = " << r.get_str()
        << "\n";
    return big(r);
  }
  if (!o.twisted.empty()) return big(twisted_bound(o.twisted[0], o.twisted[1]));
  if (o.wreath >= 0) return big(wreath_bound_finite_K(o.wreath));
  const auto [a, l] = nilpotent_input_bounds(o.nilpotent[0], o.nilpotent[1]);
  return json::array({big(a), big(l)});
}

json cmd_verdict(const Options& o, std::ostream& err) {
  const auto k = load_descriptor(o.k_desc);
  const auto h = load_descriptor(o.h_desc);
  const auto v = o.invariant == "dr" ? wreath_dr_verdict(k, h) : wreath_dimnuc_verdict(k, h);
  json out{{"K", describe(k)}, {"H", describe(h)}, {"invariant", o.invariant}, {"verdict", to_string(v)}};
  const auto w = wreath(k, h);
  try {
    out["hirsch"] = hirsch_json(hirsch_length(w));
    err << render(derive_hirsch(w));
  } catch (const IndeterminateHirsch&) {
    out["hirsch"] = nullptr;
  }
  return out;
}

json cmd_witness(const Options& o) {
  const auto oracle = oracle_by_name(o.group);
  const auto w = finite_subset_witness(oracle, o.n);
  const auto rep = verify_witness(oracle, w, o.radius);
  json out{{"group", oracle.name},
           {"n", o.n},
           {"construction", w.construction},
           {"size", w.elements.size()},
           {"elements", w.elements},
           {"radius", rep.radius},
           {"checked", rep.checked},
           {"passed", rep.passed}};
  if (rep.violation) out["violation"] = *rep.violation;
  return out;
}

}  // namespace

FiniteGroup group_from_json(const json& j, const std::string& ptr) {
  const auto& rows = field(j, "table", ptr);
  if (!rows.is_array() || rows.empty()) throw InputError(ptr + "/table", "expected a non-empty array");
  const int m = static_cast<int>(rows.size());
  if (j.contains("order") && as_int(j.at("order"), ptr + "/order") != m)
    throw InputError(ptr + "/order", "does not match the table size");
  std::vector<std::vector<int>> table;
  for (int r = 0; r < m; ++r) {
    const auto rptr = ptr + "/table/" + std::to_string(r);
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != m)
      throw InputError(rptr, "expected " + std::to_string(m) + " entries");
    std::vector<int> row;
    for (int c = 0; c < m; ++c) {
      const auto cptr = rptr + "/" + std::to_string(c);
      const auto v = as_int(rows[r][c], cptr);
      if (v < 0 || v >= m) throw InputError(cptr, "entry out of range");
      row.push_back(static_cast<int>(v));
    }
    table.push_back(std::move(row));
  }
  std::string name;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw InputError(ptr + "/name", "expected a string");
    name = j.at("name").get<std::string>();
  }
  try {
    return FiniteGroup::from_table_reindexed(table, name);
  } catch (const DomainError& e) {
    throw InputError(ptr + "/table", e.what());
  }
}

FiniteGroup load_group(const std::string& arg) {
  if (looks_like_json(arg)) return group_from_json(parse_text(arg));
  return builtin(arg);
}

Descriptor descriptor_from_json(const json& j, const std::string& ptr) {
  const auto& kind_j = field(j, "kind", ptr);
  if (!kind_j.is_string()) throw InputError(ptr + "/kind", "expected a string");
  const auto kind = kind_j.get<std::string>();
  auto sub = [&](const std::string& key) { return descriptor_from_json(field(j, key, ptr), ptr + "/" + key); };
  if (kind == "finite") {
    const auto n = as_int(field(j, "order", ptr), ptr + "/order");
    if (n < 1) throw InputError(ptr + "/order", "expected a positive integer");
    return finite_group(Int(static_cast<long>(n)));
  }
  if (kind == "free_abelian") return free_abelian(Int(static_cast<long>(as_nonneg(field(j, "rank", ptr), ptr + "/rank"))));
  if (kind == "atom") {
    if (j.contains("zinv")) {
      const auto p = as_int(j.at("zinv"), ptr + "/zinv");
      if (p < 2) throw InputError(ptr + "/zinv", "expected an integer >= 2");
      return zinv(static_cast<int>(p));
    }
    const auto& label = field(j, "label", ptr);
    if (!label.is_string()) throw InputError(ptr + "/label", "expected a string");
    const auto& hj = field(j, "hirsch", ptr);
    const auto h = hj == "inf" ? HirschValue::infinite()
                               : HirschValue(Int(static_cast<long>(as_nonneg(hj, ptr + "/hirsch"))));
    Cardinality card = Cardinality::unknown();
    if (j.contains("cardinality")) {
      const auto& c = j.at("cardinality");
      if (c == "inf")
        card = Cardinality::infinite();
      else if (c != "unknown") {
        const auto v = as_int(c, ptr + "/cardinality");
        if (v < 1) throw InputError(ptr + "/cardinality", "expected a positive integer, \"inf\" or \"unknown\"");
        card = Cardinality::finite(Int(static_cast<long>(v)));
      }
    }
    GroupFlags f;
    if (j.contains("flags")) {
      const auto& fj = j.at("flags");
      const auto fptr = ptr + "/flags";
      if (!fj.is_object()) throw InputError(fptr, "expected an object");
      for (const auto& [key, val] : fj.items()) {
        const auto t = tri_from(val, fptr + "/" + key);
        if (key == "fg")
          f.finitely_generated = t;
        else if (key == "vn")
          f.virt_nilpotent = t;
        else if (key == "vp")
          f.virt_polycyclic = t;
        else if (key == "ea")
          f.elementary_amenable = t;
        else
          throw InputError(fptr + "/" + key, "unknown flag");
      }
    }
    return atom(label.get<std::string>(), h, card, f);
  }
  if (kind == "ext") {
    auto n = sub("normal");
    return extension(n, sub("quotient"));
  }
  if (kind == "quotient") {
    auto g = sub("group");
    return quotient(g, sub("normal"));
  }
  if (kind == "wreath") {
    auto k = sub("K");
    return wreath(k, sub("H"));
  }
  if (kind == "direct_sum") {
    const auto& xs = field(j, "summands", ptr);
    if (!xs.is_array()) throw InputError(ptr + "/summands", "expected an array");
    std::vector<Descriptor> out;
    for (std::size_t i = 0; i < xs.size(); ++i)
      out.push_back(descriptor_from_json(xs[i], ptr + "/summands/" + std::to_string(i)));
    return direct_sum(std::move(out));
  }
  throw InputError(ptr + "/kind", "unknown kind '" + kind + "'");
}

Descriptor load_descriptor(const std::string& arg) { return descriptor_from_json(parse_text(arg)); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group cohomology, twisted group algebras and Hirsch-length bounds"};
  app.require_subcommand(1, 1);
  Options o;

  auto group_opt = [&](CLI::App* s) { s->add_option("--group", o.group, "builtin name, JSON file or inline JSON")->required(); };
  auto seed_opt = [&](CLI::App* s) { s->add_option("--seed", o.seed, "random seed")->capture_default_str(); };

  auto* h1c = app.add_subcommand("h1", "abelianization");
  group_opt(h1c);
  auto* h2c = app.add_subcommand("h2", "Schur multiplier");
  group_opt(h2c);
  auto* extend = app.add_subcommand("extend", "central extension by H2 and its fibers");
  group_opt(extend);
  seed_opt(extend);
  auto* classify = app.add_subcommand("classify", "isomorphism type of the central extension");
  group_opt(classify);
  seed_opt(classify);
  auto* twist = app.add_subcommand("twist", "block profile of a twisted group algebra");
  group_opt(twist);
  seed_opt(twist);
  twist->add_option("--cocycle", o.cocycle, "named cocycle, JSON file or inline JSON");
  twist->add_flag("--blocks", o.blocks_only, "print only the block list");
  auto* fibers = app.add_subcommand("fibers", "decomposition of C[G] over a central subgroup");
  group_opt(fibers);
  seed_opt(fibers);
  fibers->add_option("--subgroup", o.subgroup, "central subgroup members (default: the center)")->delimiter(',');
  auto* crossed = app.add_subcommand("crossed", "block profile of a twisted crossed product");
  group_opt(crossed);
  seed_opt(crossed);
  crossed->add_option("--algebra", o.algebra, "C, M<k> or D<k>")->capture_default_str();
  crossed->add_option("--cocycle", o.cocycle, "scalar cocycle with trivial action");
  crossed->add_flag("--random", o.random, "random twisted system instead");
  crossed->add_option("--max-dim", o.max_dim)->capture_default_str();
  auto* imprim = app.add_subcommand("imprimitivity", "induced system against the small crossed product");
  group_opt(imprim);
  seed_opt(imprim);
  imprim->add_option("--subgroup", o.subgroup, "subgroup members")->delimiter(',');
  imprim->add_option("--max-dim", o.max_dim)->capture_default_str();
  auto* stab = app.add_subcommand("stabilize", "untwisting after tensoring with matrices");
  group_opt(stab);
  seed_opt(stab);
  stab->add_option("--max-dim", o.max_dim)->capture_default_str();
  auto* hirsch = app.add_subcommand("hirsch", "Hirsch length of a group descriptor");
  hirsch->add_option("--descriptor", o.descriptor, "JSON file or inline JSON")->required();
  auto* bound = app.add_subcommand("bound", "numeric dimension bounds");
  bound->add_option("--f", o.f, "f(n)");
  bound->add_option("--hw", o.hw, "a l d: a*l*(d+1)-1")->expected(3);
  bound->add_option("--twisted", o.twisted, "h(G) h(H2)")->expected(2);
  bound->add_option("--wreath", o.wreath, "2*9^k");
  bound->add_option("--nilpotent", o.nilpotent, "k dimX")->expected(2);
  auto* verdict = app.add_subcommand("verdict", "finiteness of dimensions for a wreath product");
  verdict->add_option("--K", o.k_desc, "descriptor of K")->required();
  verdict->add_option("--H", o.h_desc, "descriptor of H")->required();
  verdict->add_option("--invariant", o.invariant)->check(CLI::IsMember({"dimnuc", "dr"}))->capture_default_str();
  auto* witness = app.add_subcommand("witness", "finite subsets moved by every translate");
  witness->add_option("--group", o.group)->required()->check(CLI::IsMember(oracle_names()));
  witness->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  witness->add_option("--radius", o.radius)->capture_default_str()->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (bound->parsed()) {
      const int chosen = (o.f >= 0) + !o.hw.empty() + !o.twisted.empty() + (o.wreath >= 0) + !o.nilpotent.empty();
      if (chosen != 1) throw CLI::ValidationError("bound", "give exactly one of --f, --hw, --twisted, --wreath, --nilpotent");
      if (o.f < -1 || o.wreath < -1) throw CLI::ValidationError("bound", "arguments must be non-negative");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    json result;
    if (h1c->parsed())
      result = {{"h1", invariants_json(h1(load_group(o.group)))}};
    else if (h2c->parsed())
      result = {{"h2", invariants_json(twext::h2(load_group(o.group)))}};
    else if (extend->parsed())
      result = cmd_extend(o, err);
    else if (classify->parsed())
      result = cmd_classify(o);
    else if (twist->parsed())
      result = cmd_twist(o);
    else if (fibers->parsed())
      result = cmd_fibers(o);
    else if (crossed->parsed())
      result = cmd_crossed(o);
    else if (imprim->parsed())
      result = cmd_imprimitivity(o);
    else if (stab->parsed())
      result = cmd_stabilize(o);
    else if (hirsch->parsed())
      result = cmd_hirsch(o, err);
    else if (bound->parsed())
      result = cmd_bound(o, err);
    else if (verdict->parsed())
      result = cmd_verdict(o, err);
    else
      result = cmd_witness(o);
    out << result.dump() << "\n";
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace twext::cli
