// Eight end-to-end scenarios spanning the whole stack: the counting series
// of the unit square and its diagonal factorization, a hull that fails the
// free-sum series identity, the prism identification chain, randomized
// series and normality checks against the brute-force oracle, Smith form
// reconstruction, the Gorenstein splitting of the cube, and the exact fine
// factorization at a half-integral junction. One pass/fail line each; the
// binary exits nonzero when any scenario fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "freesum/criteria.hpp"
#include "freesum/ehrhart.hpp"
#include "freesum/errors.hpp"
#include "freesum/exactlat.hpp"
#include "freesum/jsonio.hpp"
#include "freesum/matrix.hpp"
#include "freesum/monoid.hpp"
#include "freesum/oracle.hpp"
#include "freesum/polycone.hpp"
#include "freesum/series.hpp"

using namespace freesum;

namespace {

using Clock = std::chrono::steady_clock;

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

RatVector rv(std::initializer_list<Rat> xs) { return RatVector(xs); }

std::vector<IntVector> pts(
    std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (const auto& r : rows) out.push_back(iv(r));
  return out;
}

std::string str(const Int& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string coeff_string(const TruncatedSeries& s, long n) {
  std::ostringstream os;
  for (long k = 0; k <= n; ++k) {
    if (k) os << " ";
    os << s.coefficient(iv({k}));
  }
  return os.str();
}

std::string numerator_string(const RationalSeries& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.numerator.size(); ++i) {
    if (i) os << " ";
    os << r.numerator[i];
  }
  return os.str();
}

std::string gens_string(const AffineMonoid& m) {
  std::ostringstream os;
  for (const auto& g : m.generators()) os << show(g);
  return os.str();
}

struct Log {
  std::vector<std::string> problems;
  std::vector<std::string> info;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void note(const std::string& what) { info.push_back(what); }
};

int g_failed = 0;

void criterion(int n, const std::string& summary,
               const std::function<void(Log&)>& body) {
  Log log;
  auto t0 = Clock::now();
  try {
    body(log);
  } catch (const std::exception& e) {
    log.problems.push_back(std::string("unexpected exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool ok = log.problems.empty();
  if (!ok) ++g_failed;
  std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", n,
              summary.c_str(), secs);
  for (const auto& s : log.info) std::printf("         %s\n", s.c_str());
  for (const auto& s : log.problems) std::printf("       ! %s\n", s.c_str());
  std::fflush(stdout);
}

// Small random point configurations whose monoid is positive and normal;
// the shape mirrors the desk-scale limits of the oracle.
std::optional<AffineMonoid> random_normal_monoid(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim_d(1, 3);
  int d = dim_d(rng);
  std::uniform_int_distribution<int> coord(-1, d == 3 ? 1 : 3);
  std::uniform_int_distribution<int> npts_d(d + 1, d + 3);
  int npts = npts_d(rng);
  std::set<IntVector> ptset;
  for (int i = 0; i < npts; ++i) {
    IntVector p;
    for (int j = 0; j < d; ++j) p.push_back(Int(coord(rng)));
    ptset.insert(p);
  }
  if (ptset.size() < 2) return std::nullopt;
  std::vector<IntVector> config(ptset.begin(), ptset.end());
  AffineMonoid m = monoid_over(config);
  if (!m.is_positive() || !is_normal(m)) return std::nullopt;
  return m;
}

// Generators and their pairwise sums, shuffled: the candidate pool for
// identification pairs.
std::vector<IntVector> candidate_elements(const AffineMonoid& m,
                                          std::mt19937& rng) {
  std::set<IntVector> elems;
  for (const auto& g : m.generators()) elems.insert(g);
  for (const auto& g : m.generators())
    for (const auto& h : m.generators()) elems.insert(add(g, h));
  std::vector<IntVector> es(elems.begin(), elems.end());
  std::shuffle(es.begin(), es.end(), rng);
  return es;
}

// Complete search for p-torsion in Z^cols / rowspan(m), p prime: a torsion
// class of order p is always represented by (c * m) / p with c over
// {0..p-1}^rows, so scanning those coefficient vectors decides existence.
bool has_p_torsion(const IntMatrix& m, long p, const Lattice& span) {
  std::size_t r = m.rows(), c = m.cols();
  std::vector<long> coeff(r, 0);
  while (true) {
    std::size_t i = 0;
    while (i < r && coeff[i] == p - 1) coeff[i++] = 0;
    if (i == r) return false;
    ++coeff[i];
    IntVector w(c, Int(0));
    for (std::size_t row = 0; row < r; ++row)
      if (coeff[row] != 0)
        for (std::size_t col = 0; col < c; ++col)
          w[col] += Int(coeff[row]) * m.at(row, col);
    bool divisible = true;
    for (const Int& x : w)
      if (x % p != 0) {
        divisible = false;
        break;
      }
    if (!divisible) continue;
    IntVector v;
    for (const Int& x : w) v.push_back(Int(x / p));
    if (!span.contains(v)) return true;
  }
}

void criterion_1(Log& log) {
  RationalPolytope square(
      2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
  RationalSeries er = ehrhart_rational(square);
  RationalSeries expect({Int(1), Int(1)}, 1, 3);
  log.require(er == expect, "square series is " + to_string(er) +
                                ", expected (1+T)/(1-T)^3");

  const long n = 20;
  AffineMonoid ma = monoid_over(pts({{1, 0}, {0, 1}}));
  AffineMonoid mb = monoid_over(pts({{0, 0}, {1, 1}}));
  TruncatedSeries prod =
      mul(monoid_fine_series(ma, n), monoid_fine_series(mb, n));
  TruncatedSeries rhs = specialize(apply_one_minus_Tg(prod, iv({1, 1, 2})));
  TruncatedSeries lhs = ehrhart_series_truncated(square, n);
  log.require(lhs == rhs,
              "diagonal factorization differs from direct dilate counts: " +
                  coeff_string(lhs, n) + " vs " + coeff_string(rhs, n));
  log.require(lhs == expand_rational(expect, n),
              "expansion of (1+T)/(1-T)^3 differs from dilate counts");
}

void criterion_2(Log& log) {
  // P: tetrahedron around the origin; Q = [-1,2]; R = conv(P x 0 u 0 x Q).
  std::vector<RatVector> pv = {rv({-1, -1, -1}), rv({1, 1, 0}), rv({1, 0, 1}),
                               rv({0, 1, 1})};
  std::vector<RatVector> qv = {rv({-1}), rv({2})};
  std::vector<RatVector> rverts;
  for (const auto& v : pv) {
    RatVector w = v;
    w.push_back(Rat(0));
    rverts.push_back(w);
  }
  rverts.push_back(rv({0, 0, 0, -1}));
  rverts.push_back(rv({0, 0, 0, 2}));

  const long n = 10;
  TruncatedSeries ep(1, n), eq(1, n), er(1, n);
  for (long k = 0; k <= n; ++k) {
    ep.add_term(iv({k}), oracle::dilate_count(pv, k));
    eq.add_term(iv({k}), oracle::dilate_count(qv, k));
    er.add_term(iv({k}), oracle::dilate_count(rverts, k));
  }
  TruncatedSeries rhs = apply_one_minus_Tg(mul(ep, eq), iv({1}));
  long first = -1;
  for (long k = 0; k <= n; ++k)
    if (er.coefficient(iv({k})) != rhs.coefficient(iv({k}))) {
      first = k;
      break;
    }
  log.require(first >= 0,
              "hull counts satisfy the product identity to degree 10; "
              "expected a mismatch");
  if (first >= 0) {
    log.require(first <= 4, "first mismatch at degree " +
                                std::to_string(first) + ", expected <= 4");
    log.note("counts split first at degree " + std::to_string(first) + ": " +
             str(er.coefficient(iv({first}))) + " in the hull vs " +
             str(rhs.coefficient(iv({first}))) + " from the product");
  }

  RationalSeries er_rat = to_rational(er, 1, 4);
  RationalSeries rhs_rat = to_rational(rhs, 1, 4);
  const std::string er_ref = "1 3 5 4 2";
  const std::string rhs_ref = "1 3 4 5 2";
  std::string er_num = numerator_string(er_rat);
  std::string rhs_num = numerator_string(rhs_rat);
  log.note("hull numerator      [" + er_num + "], reference [" + er_ref +
           "]" + (er_num == er_ref ? "" : "  ** DISCREPANCY **"));
  log.note("product numerator   [" + rhs_num + "], reference [" + rhs_ref +
           "]" + (rhs_num == rhs_ref ? "" : "  ** DISCREPANCY **"));

  // The monoid over the union configuration misses group points of its
  // cone.
  AffineMonoid united = monoid_over(pts({{0, 0, 0, 0},
                                         {-1, -1, -1, 0},
                                         {1, 1, 0, 0},
                                         {1, 0, 1, 0},
                                         {0, 1, 1, 0},
                                         {0, 0, 0, -1},
                                         {0, 0, 0, 1},
                                         {0, 0, 0, 2}}));
  log.require(!is_normal(united),
              "monoid over the union configuration is normal; expected not");

  RationalPolytope p4(4, {rverts[0], rverts[1], rverts[2], rverts[3]});
  RationalPolytope q4(4, {rverts[4], rverts[5]});
  Verdict v = check_polytope_free_sum(p4, q4);
  log.require(!v.holds, "free-sum criterion accepted the pair");
  const Check* jh = v.find("junction_heights");
  log.require(jh != nullptr && !jh->ok,
              "junction heights check missing or passing");
  if (jh) {
    for (const char* side : {"left_heights", "right_heights"}) {
      Int best(0);
      for (const auto& h : jh->witness.at(side)) {
        Int x = int_from_json(h);
        if (x > best) best = x;
      }
      log.require(best >= 2, std::string(side) + " max is " + str(best) +
                                 ", expected >= 2");
    }
  }
}

void criterion_3(Log& log) {
  AffineMonoid m0 = monoid_over(pts(
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}}));
  const long n = 15;
  TruncatedSeries s0 = specialize(monoid_fine_series(m0, n));
  log.require(s0.coefficient(iv({1})) == 6,
              "prism monoid has " + str(s0.coefficient(iv({1}))) +
                  " degree-1 elements, expected 6");

  IntVector x0 = iv({0, 1, 1, 1}), y0 = iv({1, 0, 0, 1});
  log.require(check_prime(m0, x0, y0).holds,
              "first identification: binomial not prime");
  log.require(check_normal_quotient(m0, x0, y0).holds,
              "first identification: quotient not certified normal");
  auto iq1 = quotient_by_identification(m0, x0, y0);
  log.require(iq1.degree_compatible,
              "first identification: degree functional does not descend");
  TruncatedSeries s1 = specialize(monoid_fine_series(iq1.image, n));
  log.require(s1.coefficient(iv({1})) == 5,
              "first quotient has " + str(s1.coefficient(iv({1}))) +
                  " degree-1 elements, expected 5");
  log.require(s1 == apply_one_minus_Tg(s0, iv({1})),
              "first quotient series is not (1-T) times the prism series");

  IntVector x1 = iq1.project(iv({0, 1, 0, 1}));
  IntVector y1 = iq1.project(iv({0, 0, 1, 1}));
  log.require(check_prime(iq1.image, x1, y1).holds,
              "second identification: binomial not prime");
  log.require(check_normal_quotient(iq1.image, x1, y1).holds,
              "second identification: quotient not certified normal");
  auto iq2 = quotient_by_identification(iq1.image, x1, y1);
  log.require(iq2.degree_compatible,
              "second identification: degree functional does not descend");
  TruncatedSeries s2 = specialize(monoid_fine_series(iq2.image, n));
  log.require(s2.coefficient(iv({1})) == 4,
              "second quotient has " + str(s2.coefficient(iv({1}))) +
                  " degree-1 elements, expected 4");
  log.require(s2 == apply_one_minus_Tg(s1, iv({1})),
              "second quotient series is not (1-T) times the first");
}

void criterion_4(Log& log) {
  std::mt19937 rng(20250819);
  const long n = 10;
  int done = 0, tried = 0;
  while (done < 30 && tried < 4000) {
    ++tried;
    auto inst = random_normal_monoid(rng);
    if (!inst) continue;
    const AffineMonoid& m = *inst;
    std::vector<IntVector> es = candidate_elements(m, rng);

    IntVector x, y;
    bool have = false;
    for (std::size_t i = 0; i < es.size() && !have; ++i)
      for (std::size_t j = 0; j < es.size() && !have; ++j) {
        if (es[i] == es[j] || es[i].back() != es[j].back()) continue;
        if (!check_prime(m, es[i], es[j], {.assume_normal = true}).holds)
          continue;
        x = es[i];
        y = es[j];
        have = true;
      }
    if (!have) continue;
    ++done;

    auto iq = quotient_by_identification(m, x, y);
    if (!iq.degree_compatible) {
      log.require(false, "equal-degree pair not degree compatible on " +
                             gens_string(m));
      continue;
    }
    TruncatedSeries src = monoid_fine_series(m, n);
    TruncatedSeries img = monoid_fine_series(iq.image, n);
    TruncatedSeries pushed(iq.image.ambient_dim(), n);
    for (const auto& [e, c] : src.terms()) pushed.add_term(iq.project(e), c);
    if (img != apply_one_minus_Tg(pushed, iq.project(x)))
      log.require(false, "fine series identity failed: gens " +
                             gens_string(m) + " x=" + show(x) +
                             " y=" + show(y));
    long deg = x.back().convert_to<long>();
    if (specialize(img) != apply_one_minus_Tg(specialize(src), iv({deg})))
      log.require(false, "standard series identity failed: gens " +
                             gens_string(m) + " x=" + show(x) +
                             " y=" + show(y));
  }
  log.require(done == 30, "generated only " + std::to_string(done) +
                              " of 30 instances in " + std::to_string(tried) +
                              " tries");
  log.note("series identity held on " + std::to_string(done) +
           " randomized identifications (" + std::to_string(tried) +
           " configurations sampled)");

  // Pairs whose difference is twice a nonzero element: the quotient group
  // gains 2-torsion and the constructor must refuse.
  int torsion_done = 0;
  tried = 0;
  while (torsion_done < 10 && tried < 2000) {
    ++tried;
    auto inst = random_normal_monoid(rng);
    if (!inst) continue;
    const AffineMonoid& m = *inst;
    const auto& gens = m.generators();
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    IntVector u = gens[pick(rng)];
    IntVector v = gens[pick(rng)];
    IntVector x = add(v, scaled(Int(2), u));
    Verdict pv = check_prime(m, x, v, {.assume_normal = true});
    log.require(!pv.holds,
                "torsion pair passed the prime check: gens " + gens_string(m) +
                    " x=" + show(x) + " y=" + show(v));
    bool threw = false;
    try {
      quotient_by_identification(m, x, v);
    } catch (const TorsionError&) {
      threw = true;
    }
    log.require(threw, "no torsion error for gens " + gens_string(m) +
                           " x=" + show(x) + " y=" + show(v));
    ++torsion_done;
  }
  log.require(torsion_done == 10,
              "generated only " + std::to_string(torsion_done) +
                  " of 10 torsion instances");
}

void criterion_5(Log& log) {
  std::mt19937 rng(20250820);
  int agree_normal = 0, agree_nonnormal = 0, skipped = 0, tried = 0;
  while ((agree_normal + agree_nonnormal < 30 || agree_nonnormal < 5) &&
         tried < 6000) {
    ++tried;
    auto inst = random_normal_monoid(rng);
    if (!inst) continue;
    const AffineMonoid& m = *inst;
    std::vector<IntVector> es = candidate_elements(m, rng);

    int pairs_here = 0;
    for (std::size_t i = 0; i < es.size() && pairs_here < 6; ++i)
      for (std::size_t j = 0; j < es.size() && pairs_here < 6; ++j) {
        if (es[i] == es[j]) continue;
        if (!check_prime(m, es[i], es[j], {.assume_normal = true}).holds)
          continue;
        ++pairs_here;
        Verdict nv =
            check_normal_quotient(m, es[i], es[j], {.assume_normal = true});
        auto iq = quotient_by_identification(m, es[i], es[j]);
        if (!iq.image.is_positive()) {
          ++skipped;
          continue;
        }
        bool oracle_normal;
        try {
          oracle_normal = oracle::is_normal(iq.image.generators());
        } catch (const ResourceError&) {
          ++skipped;
          continue;
        }
        if (nv.holds != oracle_normal)
          log.require(false, "verdict " + std::string(nv.holds ? "normal" : "not normal") +
                                 " disagrees with oracle on gens " +
                                 gens_string(m) + " x=" + show(es[i]) +
                                 " y=" + show(es[j]));
        if (nv.holds)
          ++agree_normal;
        else
          ++agree_nonnormal;
        if (agree_normal + agree_nonnormal >= 30 && agree_nonnormal >= 5)
          break;
      }
  }
  log.require(agree_normal + agree_nonnormal >= 30,
              "verified only " +
                  std::to_string(agree_normal + agree_nonnormal) +
                  " of 30 instances");
  log.require(agree_nonnormal >= 5,
              "only " + std::to_string(agree_nonnormal) +
                  " non-normal quotients sampled, wanted >= 5");
  log.note("verdicts matched the oracle on " + std::to_string(agree_normal) +
           " normal and " + std::to_string(agree_nonnormal) +
           " non-normal quotients (" + std::to_string(skipped) +
           " beyond the oracle's reach skipped)");
}

void criterion_6(Log& log) {
  std::mt19937 rng(20250821);
  std::uniform_int_distribution<int> dim(1, 6), entry(-20, 20);
  int with_torsion = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Int(entry(rng));
    std::string tag = "matrix #" + std::to_string(t);

    SnfResult sr = snf(m);
    log.require(mul(mul(sr.u, m), sr.v) == sr.s, tag + ": u*m*v != s");
    bool shape_ok = true, chain_ok = true;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j && sr.s.at(i, j) != 0) shape_ok = false;
    std::size_t k = std::min(r, c);
    for (std::size_t i = 0; i < k; ++i)
      if (sr.s.at(i, i) < 0) shape_ok = false;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const Int& a = sr.s.at(i, i);
      const Int& b = sr.s.at(i + 1, i + 1);
      if (a == 0 ? b != 0 : b % a != 0) chain_ok = false;
    }
    log.require(shape_ok, tag + ": Smith form not nonnegative diagonal");
    log.require(chain_ok, tag + ": divisibility chain broken");

    Lattice span = Lattice::from_vectors(c, m.row_list());
    bool found = has_p_torsion(m, 2, span) || has_p_torsion(m, 3, span);
    bool tf = quotient_is_torsionfree(Lattice::full(c), m.row_list());
    log.require(!(tf && found),
                tag + ": torsionfree quotient but a torsion witness exists");
    IntVector inv = invariant_factors(m);
    bool has23 = false;
    for (const Int& d : inv)
      if (d % 2 == 0 || d % 3 == 0) has23 = true;
    log.require(found == has23,
                tag + ": 2/3-torsion search disagrees with invariant factors");
    if (found) ++with_torsion;
  }
  log.note(std::to_string(with_torsion) +
           " of 100 random quotients carry 2- or 3-torsion");

  IntMatrix planted2 = IntMatrix::from_rows(pts({{2, 0, 0}, {0, 1, 0}}), 3);
  log.require(!quotient_is_torsionfree(Lattice::full(3), planted2.row_list()),
              "planted 2-torsion not reported");
  log.require(has_p_torsion(planted2, 2,
                            Lattice::from_vectors(3, planted2.row_list())),
              "planted 2-torsion not found by search");
  IntMatrix planted3 = IntMatrix::from_rows(pts({{3, 0}, {0, 1}}), 2);
  log.require(!quotient_is_torsionfree(Lattice::full(2), planted3.row_list()),
              "planted 3-torsion not reported");
  log.require(has_p_torsion(planted3, 3,
                            Lattice::from_vectors(2, planted3.row_list())),
              "planted 3-torsion not found by search");
}

void criterion_7(Log& log) {
  AffineMonoid cube = monoid_over(pts({{0, 0, 0},
                                       {1, 0, 0},
                                       {0, 1, 0},
                                       {0, 0, 1},
                                       {1, 1, 0},
                                       {1, 0, 1},
                                       {0, 1, 1},
                                       {1, 1, 1}}));
  log.require(cube.cone().facets().size() == 6,
              "cube cone has " + std::to_string(cube.cone().facets().size()) +
                  " facets, expected 6");
  IntVector x = iv({1, 1, 0, 1}), y = iv({0, 0, 1, 1});
  Verdict v = gorenstein_split_check(cube, {x, y});
  log.require(v.holds, "splitting rejected");
  const Check* wit = v.find("gorenstein_witness");
  log.require(wit != nullptr && wit->ok, "no canonical witness found");
  if (wit && wit->ok)
    log.require(wit->witness.at("w") == json_of(iv({1, 1, 1, 2})),
                "witness is " + wit->witness.at("w").dump() +
                    ", expected [1,1,1,2]");
  auto iq = quotient_by_identification(cube, x, y);
  log.require(iq.image.rank() == 3, "quotient rank is " +
                                        std::to_string(iq.image.rank()) +
                                        ", expected 3");
  log.require(oracle::is_normal(iq.image.generators()),
              "oracle rejects normality of the quotient");
}

void criterion_8(Log& log) {
  auto a = pts({{1, 0}, {0, 1}});
  auto b = pts({{0, 0}, {1, 1}});
  FreeSumConfig cfg = rational_point_sum_config(a, b);
  log.require(cfg.junction == iv({1, 1, 2}),
              "junction is " + show(cfg.junction) + ", expected (1, 1, 2)");
  const long n = 10;
  AffineMonoid united = monoid_over(pts({{1, 0}, {0, 1}, {0, 0}, {1, 1}}));
  TruncatedSeries lhs = monoid_fine_series(united, n);
  TruncatedSeries rhs = apply_one_minus_Tg(
      mul(monoid_fine_series(cfg.ma, n), monoid_fine_series(cfg.mb, n)),
      cfg.junction);
  log.require(lhs == rhs, "fine factorization fails at the junction");
}

}  // namespace

int main() {
  criterion(1, "unit square series equals (1+T)/(1-T)^3 and its diagonal factorization",
            criterion_1);
  criterion(2, "hull of the centered star and long segment is not a free sum",
            criterion_2);
  criterion(3, "prism identification chain keeps primality, normality, and a (1-T) factor per step",
            criterion_3);
  criterion(4, "quotient series identity on randomized monoids; torsion differences refused",
            criterion_4);
  criterion(5, "normal-quotient verdicts match the brute-force oracle",
            criterion_5);
  criterion(6, "Smith form reconstruction and torsion detection on random matrices",
            criterion_6);
  criterion(7, "Gorenstein splitting of the cube monoid", criterion_7);
  criterion(8, "diagonal configurations: exact fine factorization at the half-integral junction",
            criterion_8);
  if (g_failed) std::printf("%d criteria failed\n", g_failed);
  return g_failed ? 1 : 0;
}
