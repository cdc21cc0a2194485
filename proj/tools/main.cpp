// Command-line front end: census, catalog, construct, verify, product-demo.
// Everything prints one JSON document (or TSV with --tsv) on stdout.
// Exit codes: 0 ok, 1 usage, 2 cap exceeded, 3 violated guarantee.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "setstab/builtins.hpp"
#include "setstab/catalog.hpp"
#include "setstab/census.hpp"
#include "setstab/constructor.hpp"
#include "setstab/errors.hpp"
#include "setstab/group.hpp"
#include "setstab/product.hpp"
#include "setstab/structure.hpp"

using json = nlohmann::ordered_json;
using namespace setstab;

namespace {

PermGroup load_group(const std::string& arg) {
  if (std::filesystem::exists(arg)) return parse_group("@" + arg);
  return parse_group(arg);
}

json perm_json(const Perm& p) {
  json a = json::array();
  for (int i = 0; i < p.degree(); ++i) a.push_back(p[i]);
  return a;
}

json coloring_json(const Coloring& c) {
  json a = json::array();
  for (uint8_t v : c) a.push_back(static_cast<int>(v));
  return a;
}

json gens_json(const std::vector<Perm>& gens) {
  json a = json::array();
  for (const Perm& p : gens) a.push_back(perm_json(p));
  return a;
}

json certificate_json(const Certificate& cert) {
  json j;
  j["coloring"] = coloring_json(cert.coloring);
  j["stab_gens"] = gens_json(cert.stabilizer_generators);
  j["max_orbit_length"] = cert.max_orbit_length;
  j["derived_length"] = cert.derived_length;
  j["elem_abelian_2"] = cert.elementary_abelian_2;
  j["trace"] = cert.construction_trace;
  return j;
}

json census_json(const CensusReport& rep) {
  json j;
  j["group"] = rep.group_id;
  j["degree"] = rep.degree;
  j["k"] = rep.colors;
  json classes = json::array();
  for (const auto& cls : rep.classes) {
    json c;
    c["rep"] = coloring_json(cls.rep);
    c["orbit_size"] = cls.orbit_size;
    c["stab_order"] = cls.stab_order.str();
    c["max_orbit_length"] = cls.max_orbit_length;
    c["derived_length"] = cls.derived_length;
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  json e;
  for (int i : {1, 2, 3, 6}) e[std::to_string(i)] = rep.ell(i);
  j["ell"] = std::move(e);
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// doubled copy of a block coloring: same pattern on a second set of blocks
Coloring doubled(const Coloring& c) {
  Coloring d(c);
  d.insert(d.end(), c.begin(), c.end());
  return d;
}

// A two-level obstruction: the unique inner subset class with metabelian
// stabilizer forces any candidate in the doubled group onto one pattern,
// whose stabilizer has derived length 3. So no subset of the doubled group
// has a metabelian stabilizer.
json run_verify_bad(const Caps& caps, int jobs) {
  PermGroup b = parse_group("wr_imp(sym:4,sym:4)");
  CensusReport rep = coloring_census(b, 2, caps, jobs, "wr_imp(sym:4,sym:4)");

  std::vector<const OrbitClassInfo*> metabelian;
  for (const auto& cls : rep.classes)
    if (cls.derived_length >= 0 && cls.derived_length <= 2) metabelian.push_back(&cls);
  if (metabelian.size() != 1)
    fail(Err::PropertyViolation, "expected exactly one metabelian subset class");
  const OrbitClassInfo& cls = *metabelian.front();
  if (cls.stab_order != BigInt(6 * 6 * 32))
    fail(Err::PropertyViolation, "metabelian stabilizer order is off");
  if (cls.derived_length != 2)
    fail(Err::PropertyViolation, "the distinguished stabilizer is abelian, not metabelian");

  PermGroup g2 = wreath_imprimitive(b, symmetric_group(2));
  PermGroup dstab = imprimitive_coloring_stabilizer(g2, doubled(cls.rep), caps);
  DerivedSeriesReport ds = derived_series(dstab);
  if (!ds.solvable || ds.derived_length != 3)
    fail(Err::PropertyViolation, "doubled stabilizer must have derived length 3");
  if (dstab.order() != BigInt(2) * cls.stab_order * cls.stab_order)
    fail(Err::PropertyViolation, "doubled stabilizer must be the wreath square");

  json out;
  out["example"] = "bad";
  out["inner_group"] = "wr_imp(sym:4,sym:4)";
  out["inner_degree"] = b.degree();
  out["inner_classes"] = static_cast<long long>(rep.classes.size());
  out["metabelian_classes"] = 1;
  out["inner_rep"] = coloring_json(cls.rep);
  out["inner_stab_order"] = cls.stab_order.str();
  out["inner_stab_derived_length"] = cls.derived_length;
  out["doubled_degree"] = g2.degree();
  out["doubled_stab_order"] = dstab.order().str();
  out["doubled_stab_derived_length"] = ds.derived_length;
  out["metabelian_absent_in_doubled"] = true;
  return out;
}

// Same scheme one level deeper: inner classes with short stabilizer orbits
// are counted exhaustively, the 32-point group is covered by multisets of
// those classes, and the single surviving pattern doubles into an orbit of
// length 8.
json run_verify_bad2(const Caps& caps, int jobs) {
  PermGroup a = affine_semilinear_line_8();
  CensusReport arep = coloring_census(a, 2, caps, jobs, "agammal1:8");

  std::vector<const OrbitClassInfo*> good;
  int attained = 0;
  for (const auto& cls : arep.classes)
    if (cls.max_orbit_length <= 4) {
      good.push_back(&cls);
      attained = std::max(attained, cls.max_orbit_length);
    }
  if (good.size() != 4) fail(Err::PropertyViolation, "expected exactly 4 short-orbit classes");
  if (attained != 4) fail(Err::PropertyViolation, "orbit length 4 must be attained");
  if (arep.ell(3) != 3) fail(Err::PropertyViolation, "expected 3 classes with orbits <= 3");
  // no orbit can have length exactly 5: 5 does not divide the group order
  if (a.order() % BigInt(5) == 0) fail(Err::PropertyViolation, "order divisibility premise");

  // every 32-point subset whose stabilizer has orbits <= 5 must place one of
  // the 4 classes on each block, and the arrangement is immaterial up to
  // conjugacy: check all multisets of 4
  PermGroup bb = parse_group("wr_imp(agammal1:8,sym:4)");
  int deg = a.degree();
  struct Hit {
    std::array<int, 4> pick;
    Coloring rep;
    BigInt order;
    int maxorb;
  };
  std::vector<Hit> hits;
  long long multisets = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      for (int k = j; k < 4; ++k)
        for (int l = k; l < 4; ++l) {
          ++multisets;
          Coloring z;
          for (int idx : {i, j, k, l}) {
            const Coloring& inner = good[idx]->rep;
            z.insert(z.end(), inner.begin(), inner.end());
          }
          (void)deg;
          PermGroup st = imprimitive_coloring_stabilizer(bb, z, caps);
          int maxorb = st.max_orbit_length();
          if (maxorb <= 5) hits.push_back({{i, j, k, l}, z, st.order(), maxorb});
        }
  if (hits.size() != 1)
    fail(Err::PropertyViolation, "expected a unique 32-point class with orbits <= 5");
  const Hit& hit = hits.front();
  if (hit.maxorb != 4) fail(Err::PropertyViolation, "the unique class must attain orbits of 4");

  PermGroup g2 = wreath_imprimitive(bb, symmetric_group(2));
  PermGroup dstab = imprimitive_coloring_stabilizer(g2, doubled(hit.rep), caps);
  if (dstab.max_orbit_length() != 8)
    fail(Err::PropertyViolation, "doubled stabilizer must have an orbit of length 8");

  json out;
  out["example"] = "bad2";
  out["inner_group"] = "agammal1:8";
  out["inner_degree"] = a.degree();
  out["inner_classes"] = static_cast<long long>(arep.classes.size());
  out["short_orbit_classes"] = 4;
  out["short_orbit_attained"] = attained;
  out["ell_2_3"] = arep.ell(3);
  json reps = json::array();
  for (const auto* cls : good) reps.push_back(coloring_json(cls->rep));
  out["inner_reps"] = std::move(reps);
  out["block_group"] = "wr_imp(agammal1:8,sym:4)";
  out["block_degree"] = bb.degree();
  out["multisets_checked"] = multisets;
  out["qualifying_multisets"] = 1;
  out["block_rep"] = coloring_json(hit.rep);
  out["block_stab_order"] = hit.order.str();
  out["block_max_orbit"] = hit.maxorb;
  out["doubled_degree"] = g2.degree();
  out["doubled_max_orbit"] = dstab.max_orbit_length();
  out["short_orbit_absent_in_doubled"] = true;
  return out;
}

json product_demo_json(const std::string& xs, const std::string& ts, int d,
                       const std::string& ss, int trials, uint64_t seed, const Caps& caps) {
  ProductInstance inst =
      make_product_instance(load_group(xs), load_group(ts), d, load_group(ss), caps);
  TwoPointReport rep = two_point_report(inst, caps);
  int done = randomized_projection_agreement(inst, trials, seed, caps);

  json out;
  out["x"] = xs;
  out["t"] = ts;
  out["d"] = d;
  out["s"] = ss;
  out["degree"] = inst.g.degree();
  out["group_order"] = inst.g.order().str();
  out["stabilizer_order"] = inst.h.order().str();
  out["delta"] = rep.delta;
  out["shift"] = perm_json(rep.shift);
  out["v"] = perm_json(rep.v);
  out["base_point"] = rep.base_point;
  out["moved_point"] = rep.moved_point;
  out["dl_point_stabilizer"] = rep.dl_y;
  out["dl_base_part"] = rep.dl_base_part;
  out["dl_projection"] = rep.dl_projection;
  out["dl_intersection"] = rep.dl_intersection;
  out["dl_point_pair"] = rep.dl_point_pair;
  out["intersection_order"] = rep.intersection_order.str();
  out["dl_bound"] = rep.dl_y + 3;
  out["dl_bound_holds"] = rep.dl_intersection <= rep.dl_y + 3 && rep.dl_y + 3 <= 13;
  out["random_trials"] = done;
  out["triple_agreement"] = true;  // any disagreement throws before this line
  json sets;
  for (int size : {2, 3, 4})
    sets[std::to_string(size)] = small_set_stabilizer_check(inst, size, caps);
  out["small_set_solvable"] = std::move(sets);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvable permutation group census and construction toolkit"};
  app.require_subcommand(1);

  uint64_t cap_orbit = Caps{}.orbit;
  uint64_t cap_space = Caps{}.space;
  int jobs = 1;
  app.add_option("--cap-orbit", cap_orbit, "largest orbit the walkers will touch");
  app.add_option("--cap-space", cap_space, "largest coloring space enumerated exhaustively");
  app.add_option("--jobs", jobs, "worker threads for census labelling");

  std::string group_expr, group_t, group_s, example;
  int colors = 2, regularity = 0, want = 1, copies = 2, trials = 50;
  uint64_t seed = 1;
  bool table1 = false, tsv = false;
  int max_degree = 9;

  CLI::App* census = app.add_subcommand("census", "classify all k-colorings into orbits");
  census->add_option("--group", group_expr, "group expression or JSON file")->required();
  census->add_option("--colors", colors, "number of colors")->required();
  census->add_option("--regularity", regularity, "also count classes with orbits <= this");

  CLI::App* catalog = app.add_subcommand("catalog", "primitive solvable groups of degree <= 9");
  catalog->add_flag("--table1", table1, "only rows with fewer than 5 regular classes");
  catalog->add_flag("--tsv", tsv, "tab-separated rows instead of JSON");
  catalog->add_option("--max-degree", max_degree, "largest degree to enumerate");

  CLI::App* construct = app.add_subcommand("construct", "certified colorings of one group");
  construct->require_subcommand(1);
  CLI::App* goodsub = construct->add_subcommand("good-subset", "subsets with stabilizer orbits <= 6");
  goodsub->add_option("--group", group_expr, "group expression or JSON file")->required();
  goodsub->add_option("--want", want, "how many inequivalent classes");
  goodsub->add_option("--seed", seed, "sampling seed for large domains");
  CLI::App* threecol = construct->add_subcommand("three-coloring", "3-coloring with orbits <= 2");
  threecol->add_option("--group", group_expr, "group expression or JSON file")->required();
  threecol->add_option("--seed", seed, "sampling seed for large domains");
  CLI::App* asym = construct->add_subcommand("asymmetric", "k-colorings with orbits <= i");
  asym->add_option("--group", group_expr, "group expression or JSON file")->required();
  asym->add_option("--colors", colors, "number of colors")->required();
  asym->add_option("--regularity", regularity, "largest stabilizer orbit allowed")->required();
  asym->add_option("--want", want, "how many inequivalent colorings");
  asym->add_option("--seed", seed, "sampling seed for large domains");

  CLI::App* verify = app.add_subcommand("verify", "recheck a pinned obstruction example");
  verify->add_option("--example", example, "bad | bad2")->required();

  CLI::App* demo = app.add_subcommand("product-demo", "two-point stabilizer in a product action");
  demo->add_option("--x", group_expr, "coordinate group")->required();
  demo->add_option("--t", group_t, "designated normal subgroup")->required();
  demo->add_option("--d", copies, "number of coordinates")->required();
  demo->add_option("--s", group_s, "top group on the coordinates")->required();
  demo->add_option("--trials", trials, "randomized agreement trials");
  demo->add_option("--seed", seed, "trial seed");

  // let --cap-orbit / --cap-space / --jobs appear after the subcommand too
  for (CLI::App* sc : {census, catalog, construct, goodsub, threecol, asym, verify, demo})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  Caps caps{cap_orbit, cap_space};

  try {
    if (*census) {
      PermGroup g = load_group(group_expr);
      CensusReport rep = coloring_census(g, colors, caps, jobs, group_expr);
      json j = census_json(rep);
      if (regularity > 0) {
        j["regularity"] = regularity;
        j["regular_classes"] = rep.ell(regularity);
      }
      emit(j);
    } else if (*catalog) {
      std::vector<CatalogEntry> entries = enumerate_primitive_solvable(max_degree, caps, jobs);
      if (table1) {
        std::vector<TableRow> rows = table1_report(entries);
        if (tsv) {
          for (const TableRow& r : rows)
            std::cout << r.degree << "\t" << r.ell[0] << "\t" << r.ell[1] << "\t" << r.ell[2]
                      << "\t" << r.ell[3] << "\n";
        } else {
          json j;
          j["rows"] = json::array();
          for (const TableRow& r : rows) {
            json row;
            row["degree"] = r.degree;
            row["ell"] = r.ell;
            j["rows"].push_back(std::move(row));
          }
          emit(j);
        }
      } else {
        json j;
        j["entries"] = json::array();
        for (const CatalogEntry& e : entries) {
          json row;
          row["degree"] = e.degree;
          row["order"] = e.order.str();
          row["ell2"] = e.ell2;
          row["subset_classes"] = e.subset_classes;
          row["label"] = e.label;
          row["library_id_hint"] = e.library_id_hint;
          j["entries"].push_back(std::move(row));
        }
        emit(j);
      }
    } else if (*construct) {
      PermGroup g = load_group(group_expr);
      if (*goodsub) {
        CertifiedFamily fam = good_subsets(g, want, caps, seed);
        json j;
        j["group"] = group_expr;
        j["certificates"] = json::array();
        for (const Certificate& cert : fam.certificates)
          j["certificates"].push_back(certificate_json(cert));
        emit(j);
      } else if (*threecol) {
        json j;
        j["group"] = group_expr;
        j["certificate"] = certificate_json(three_coloring_2asym(g, caps, seed));
        emit(j);
      } else {
        ColoringFamily fam = asymmetric_colorings(g, colors, regularity, want, caps, seed);
        json j;
        j["group"] = group_expr;
        j["colors"] = colors;
        j["regularity"] = regularity;
        j["colorings"] = json::array();
        for (const Coloring& c : fam.colorings) j["colorings"].push_back(coloring_json(c));
        j["pairwise_inequivalent"] = fam.pairwise_inequivalent;
        emit(j);
      }
    } else if (*verify) {
      if (example == "bad")
        emit(run_verify_bad(caps, jobs));
      else if (example == "bad2")
        emit(run_verify_bad2(caps, jobs));
      else
        fail(Err::BadInput, "unknown example: " + example);
    } else if (*demo) {
      emit(product_demo_json(group_expr, group_t, copies, group_s, trials, seed, caps));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.is_cap()) return 2;
    if (e.is_property_violation()) return 3;
    return 1;
  }
  return 0;
}
