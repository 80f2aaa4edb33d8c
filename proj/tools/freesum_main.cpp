#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freesum/criteria.hpp"
#include "freesum/ehrhart.hpp"
#include "freesum/errors.hpp"
#include "freesum/jsonio.hpp"
#include "freesum/oracle.hpp"

using namespace freesum;
using nlohmann::json;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

const json& field(const json& j, const std::string& path,
                  const std::string& name) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(path + ": missing field \"" + name + "\"");
  return j.at(name);
}

std::vector<RatVector> vertices_from_file(const std::string& path) {
  json j = load_json(path);
  const json& vs = field(j, path, "vertices");
  if (!vs.is_array() || vs.empty())
    throw ParseError(path + ": \"vertices\" must be a nonempty array");
  std::vector<RatVector> verts;
  for (const json& row : vs) {
    try {
      verts.push_back(ratvector_from_json(row));
    } catch (const ParseError& e) {
      throw ParseError(path + ": vertices: " + e.what());
    }
    if (verts.back().size() != verts.front().size())
      throw ParseError(path + ": vertices of mixed dimension");
  }
  return verts;
}

RationalPolytope polytope_from_file(const std::string& path) {
  std::vector<RatVector> verts = vertices_from_file(path);
  return RationalPolytope(verts[0].size(), verts);
}

AffineMonoid monoid_from_file(const std::string& path) {
  json j = load_json(path);
  long ambient = 0;
  try {
    ambient = int_from_json(field(j, path, "ambient")).convert_to<long>();
  } catch (const ParseError& e) {
    throw ParseError(path + ": ambient: " + e.what());
  }
  if (ambient < 1) throw ParseError(path + ": \"ambient\" must be positive");
  const json& gj = field(j, path, "generators");
  if (!gj.is_array() || gj.empty())
    throw ParseError(path + ": \"generators\" must be a nonempty array");
  std::vector<IntVector> gens;
  for (const json& row : gj) {
    try {
      gens.push_back(intvector_from_json(row));
    } catch (const ParseError& e) {
      throw ParseError(path + ": generators: " + e.what());
    }
    if (gens.back().size() != static_cast<std::size_t>(ambient))
      throw ParseError(path + ": generator dimension differs from \"ambient\"");
  }
  return AffineMonoid(static_cast<std::size_t>(ambient), gens);
}

std::vector<IntVector> points_from_file(const std::string& path) {
  json j = load_json(path);
  const json& pj = field(j, path, "points");
  if (!pj.is_array() || pj.empty())
    throw ParseError(path + ": \"points\" must be a nonempty array");
  std::vector<IntVector> points;
  for (const json& row : pj) {
    try {
      points.push_back(intvector_from_json(row));
    } catch (const ParseError& e) {
      throw ParseError(path + ": points: " + e.what());
    }
    if (points.back().size() != points.front().size())
      throw ParseError(path + ": points of mixed dimension");
  }
  return points;
}

IntVector vector_from_arg(const std::string& flag, const std::string& s) {
  IntVector v;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    try {
      v.push_back(Int(tok));
    } catch (const std::exception&) {
      throw ParseError(flag + ": not an integer: " + tok);
    }
  }
  if (v.empty()) throw ParseError(flag + ": empty vector");
  return v;
}

std::vector<IntVector> vectors_from_args(const std::string& flag,
                                         const std::vector<std::string>& ss) {
  std::vector<IntVector> out;
  for (const std::string& s : ss) out.push_back(vector_from_arg(flag, s));
  return out;
}

std::string coeff_line(const std::vector<Int>& cs) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ",";
    out += cs[i].str();
  }
  return out;
}

std::vector<Int> series_coefficients(const TruncatedSeries& s) {
  std::vector<Int> cs;
  for (long k = 0; k <= s.truncation_degree(); ++k)
    cs.push_back(s.coefficient(IntVector{Int(k)}));
  return cs;
}

json coeff_json(const std::vector<Int>& cs) {
  json a = json::array();
  for (const Int& c : cs) a.push_back(json_of(c));
  return a;
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << "holds: " << (v.holds ? "true" : "false") << "\n";
  for (const Check& c : v.checks) {
    os << (c.ok ? "[ ok ]" : "[fail]") << " " << c.name
       << (c.mandatory ? "" : " (informational)") << "\n";
    if (!c.witness.is_null()) os << "       " << c.witness.dump() << "\n";
  }
  return os.str();
}

json verdict_report(const std::string& command, const Verdict& v) {
  json rep = v.to_json();
  rep["command"] = command;
  return rep;
}

void print_report(const std::string& format, const json& report,
                  const std::string& text) {
  if (format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
}

RatVector embedded(const RatVector& v, std::size_t offset, std::size_t total) {
  RatVector out(total, Rat(0));
  for (std::size_t j = 0; j < v.size(); ++j) out[offset + j] = v[j];
  return out;
}

/// The two polytopes placed on orthogonal coordinate axes of the sum of
/// their ambient spaces, the free-sum position.
std::pair<RationalPolytope, RationalPolytope> orthogonal_pair(
    const std::string& p_path, const std::string& q_path) {
  std::vector<RatVector> pv = vertices_from_file(p_path);
  std::vector<RatVector> qv = vertices_from_file(q_path);
  const std::size_t dp = pv[0].size();
  const std::size_t d = dp + qv[0].size();
  std::vector<RatVector> pe, qe;
  for (const RatVector& v : pv) pe.push_back(embedded(v, 0, d));
  for (const RatVector& v : qv) qe.push_back(embedded(v, dp, d));
  return {RationalPolytope(d, pe), RationalPolytope(d, qe)};
}

/// Points of a and b on orthogonal axes, homogenized: generators of the
/// monoid over the union configuration, duplicates removed.
std::vector<IntVector> union_generators(const std::vector<IntVector>& a,
                                        const std::vector<IntVector>& b) {
  const std::size_t da = a[0].size(), db = b[0].size();
  std::set<IntVector> gens;
  for (const IntVector& p : a) {
    IntVector g = p;
    g.resize(da + db, Int(0));
    g.push_back(Int(1));
    gens.insert(g);
  }
  for (const IntVector& p : b) {
    IntVector g(da, Int(0));
    for (const Int& c : p) g.push_back(c);
    g.push_back(Int(1));
    gens.insert(g);
  }
  return std::vector<IntVector>(gens.begin(), gens.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact lattice point series and binomial prime/normality checks "
      "for affine monoids"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string polytope_path, p_path, q_path, monoid_path;
  std::vector<std::string> points_paths;
  std::string x_arg, y_arg;
  std::vector<std::string> xs_args;
  long trunc = -1;
  bool want_rational = false;
  CheckOptions opts;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format, json or text")
        ->check(CLI::IsMember({"json", "text"}));
  };
  auto add_monoid = [&](CLI::App* cmd) {
    cmd->add_option("--monoid", monoid_path, "monoid JSON file")->required();
  };
  auto add_assert_normal = [&](CLI::App* cmd) {
    cmd->add_flag("--assert-normal", opts.assume_normal,
                  "vouch for normality of the inputs, skipping the check");
  };
  auto add_pairing = [&](CLI::App* cmd) {
    cmd->add_flag("--strict-normal-pairing,!--literal-normal-pairing",
                  opts.strict_pairing,
                  "pair each point with the facet through the other one "
                  "(default); the negation tests all four heights");
  };
  auto add_trunc = [&](CLI::App* cmd, const std::string& what) {
    cmd->add_option("--trunc", trunc, what)->check(CLI::NonNegativeNumber);
  };

  CLI::App* ehr = app.add_subcommand(
      "ehrhart", "Lattice point counts of the dilates of a polytope");
  ehr->add_option("--polytope", polytope_path, "polytope JSON file")
      ->required();
  add_trunc(ehr, "last dilation factor (default 10)");
  ehr->add_flag("--rational", want_rational,
                "also report the series in closed rational form");
  add_format(ehr);

  CLI::App* cp = app.add_subcommand(
      "check-prime", "Primeness of the binomial identifying x with y");
  add_monoid(cp);
  cp->add_option("--x", x_arg, "element, space-separated integers")
      ->required();
  cp->add_option("--y", y_arg, "element, space-separated integers")
      ->required();
  add_assert_normal(cp);
  add_format(cp);

  CLI::App* cpm = app.add_subcommand(
      "check-prime-mult",
      "Primeness of the ideal identifying all the given elements");
  add_monoid(cpm);
  cpm->add_option("--x", xs_args, "element, repeat the flag for each")
      ->required();
  add_assert_normal(cpm);
  add_format(cpm);

  CLI::App* cn = app.add_subcommand(
      "check-normal", "Normality of the quotient identifying x with y");
  add_monoid(cn);
  cn->add_option("--x", x_arg, "element, space-separated integers")
      ->required();
  cn->add_option("--y", y_arg, "element, space-separated integers")
      ->required();
  add_assert_normal(cn);
  add_pairing(cn);
  add_format(cn);

  CLI::App* cnm = app.add_subcommand(
      "check-normal-mult",
      "Normality of the quotient identifying all the given elements");
  add_monoid(cnm);
  cnm->add_option("--x", xs_args, "element, repeat the flag for each")
      ->required();
  add_assert_normal(cnm);
  add_pairing(cnm);
  add_format(cnm);

  CLI::App* fs = app.add_subcommand(
      "free-sum",
      "Whether the counting series of the free sum of two polytopes "
      "(placed on orthogonal axes) splits as (1-T) times the product "
      "of their series");
  fs->add_option("--p", p_path, "left polytope JSON file")->required();
  fs->add_option("--q", q_path, "right polytope JSON file")->required();
  add_trunc(fs, "series comparison degree (default from the polytopes)");
  add_format(fs);

  CLI::App* rs = app.add_subcommand(
      "rational-sum",
      "The free-sum split for polytopes whose affine hulls meet in one "
      "(possibly rational) point");
  rs->add_option("--p", p_path, "left polytope JSON file")->required();
  rs->add_option("--q", q_path, "right polytope JSON file")->required();
  add_trunc(rs, "series comparison degree (default from the polytopes)");
  add_format(rs);

  CLI::App* go = app.add_subcommand(
      "gorenstein",
      "Gorenstein splitting: the given elements must sum to the interior "
      "element of height one over every facet");
  add_monoid(go);
  go->add_option("--x", xs_args, "summand, repeat the flag for each")
      ->required();
  add_assert_normal(go);
  add_format(go);

  CLI::App* orc = app.add_subcommand(
      "oracle", "Brute-force reference computations, no shared machinery");
  orc->require_subcommand(1);
  CLI::App* oe = orc->add_subcommand(
      "ehrhart", "Dilate counts by box enumeration (default --trunc 6)");
  oe->add_option("--polytope", polytope_path, "polytope JSON file")
      ->required();
  add_trunc(oe, "last dilation factor (default 6)");
  add_format(oe);
  CLI::App* on = orc->add_subcommand(
      "normality",
      "Exhaustive gap search over the monoid of one configuration file, "
      "of the union of two, or of explicit generators");
  on->add_option("--points", points_paths,
                 "configuration JSON file; twice for a union on "
                 "orthogonal axes")
      ->expected(1, 2);
  on->add_option("--monoid", monoid_path, "monoid JSON file");
  add_format(on);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ehr->parsed()) {
      RationalPolytope p = polytope_from_file(polytope_path);
      long n = trunc < 0 ? 10 : trunc;
      std::vector<Int> cs = series_coefficients(ehrhart_series_truncated(p, n));
      json rep{{"command", "ehrhart"},
               {"trunc", n},
               {"coefficients", coeff_json(cs)}};
      std::string text;
      if (want_rational) {
        RationalSeries r = ehrhart_rational(p);
        rep["rational"] = json_of(r);
        text += "rational: " + to_string(r) + "\n";
      }
      text += "coefficients: " + coeff_line(cs) + "\n";
      print_report(format, rep, text);
    } else if (cp->parsed()) {
      AffineMonoid m = monoid_from_file(monoid_path);
      Verdict v = check_prime(m, vector_from_arg("--x", x_arg),
                              vector_from_arg("--y", y_arg), opts);
      print_report(format, verdict_report("check-prime", v), verdict_text(v));
    } else if (cpm->parsed()) {
      AffineMonoid m = monoid_from_file(monoid_path);
      Verdict v = check_prime_mult(m, vectors_from_args("--x", xs_args), opts);
      print_report(format, verdict_report("check-prime-mult", v),
                   verdict_text(v));
    } else if (cn->parsed()) {
      AffineMonoid m = monoid_from_file(monoid_path);
      Verdict v = check_normal_quotient(m, vector_from_arg("--x", x_arg),
                                        vector_from_arg("--y", y_arg), opts);
      print_report(format, verdict_report("check-normal", v), verdict_text(v));
    } else if (cnm->parsed()) {
      AffineMonoid m = monoid_from_file(monoid_path);
      Verdict v = check_normal_mult(m, vectors_from_args("--x", xs_args), opts);
      print_report(format, verdict_report("check-normal-mult", v),
                   verdict_text(v));
    } else if (fs->parsed()) {
      auto [p, q] = orthogonal_pair(p_path, q_path);
      if (trunc >= 0) opts.series_truncation = trunc;
      Verdict v = check_polytope_free_sum(p, q, opts);
      print_report(format, verdict_report("free-sum", v), verdict_text(v));
    } else if (rs->parsed()) {
      RationalPolytope p = polytope_from_file(p_path);
      RationalPolytope q = polytope_from_file(q_path);
      if (trunc >= 0) opts.series_truncation = trunc;
      Verdict v = check_rational_EE(p, q, opts);
      print_report(format, verdict_report("rational-sum", v), verdict_text(v));
    } else if (go->parsed()) {
      AffineMonoid m = monoid_from_file(monoid_path);
      Verdict v =
          gorenstein_split_check(m, vectors_from_args("--x", xs_args), opts);
      print_report(format, verdict_report("gorenstein", v), verdict_text(v));
    } else if (oe->parsed()) {
      std::vector<RatVector> verts = vertices_from_file(polytope_path);
      long n = trunc < 0 ? 6 : trunc;
      std::vector<Int> cs;
      for (long k = 0; k <= n; ++k)
        cs.push_back(oracle::dilate_count(verts, k));
      json rep{{"command", "oracle-ehrhart"},
               {"trunc", n},
               {"coefficients", coeff_json(cs)}};
      print_report(format, rep, "coefficients: " + coeff_line(cs) + "\n");
    } else if (on->parsed()) {
      if (points_paths.empty() == monoid_path.empty())
        throw ParseError(
            "oracle normality: give either --points or --monoid");
      std::vector<IntVector> gens;
      if (!monoid_path.empty()) {
        gens = monoid_from_file(monoid_path).generators();
      } else if (points_paths.size() == 1) {
        for (IntVector p : points_from_file(points_paths[0])) {
          p.push_back(Int(1));
          gens.push_back(std::move(p));
        }
      } else {
        gens = union_generators(points_from_file(points_paths[0]),
                                points_from_file(points_paths[1]));
      }
      bool normal = oracle::is_normal(gens);
      json rep{{"command", "oracle-normality"}, {"normal", normal}};
      print_report(format, rep,
                   std::string("normal: ") + (normal ? "true" : "false") +
                       "\n");
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const MembershipError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TorsionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
