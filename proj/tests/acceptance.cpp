// One pass/fail line per acceptance criterion.  Exit status is nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include <schottky.hpp>

#include "support/random_corpus.hpp"

using namespace schottky;

namespace {

  using Clock = std::chrono::steady_clock;

  // Collects the reasons a criterion failed.
  struct Check {
    std::ostringstream why;
    bool               ok = true;

    void expect(bool cond, std::string const& what) {
      if (!cond) {
        if (!ok) {
          why << "; ";
        }
        ok = false;
        why << what;
      }
    }
  };

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  long long m_of(Epimorphism const& e, std::uint32_t t) {
    return fixed_point_profile(e, e.target().element(t)).m();
  }

  void reflection_family(Check& c) {
    for (auto [q, r] : {std::pair{3LL, 4LL}, {4, 3}, {5, 2}, {2, 5}}) {
      auto        t0  = Clock::now();
      auto        ex  = example_7_1(q, r);
      auto const& e   = ex.epimorphism;
      long long   g   = kernel_rank(e).rank;
      auto        tag = "(" + std::to_string(q) + "," + std::to_string(r) + ")";
      c.expect(g == (r - 1) * q + 1, tag + " rank " + std::to_string(g));
      auto p1 = fixed_point_profile(e, e.target().element(ex.designated[0]));
      auto p2 = fixed_point_profile(e, e.target().element(ex.designated[1]));
      if (q % 2 == 1) {
        c.expect(p1.alpha == r + 1 && p2.alpha == r + 1, tag + " alphas");
      } else {
        c.expect(p1.alpha == 2 && p2.alpha == 2 * r, tag + " alphas");
      }
      c.expect(p1.m() + p2.m() == pair_bound(g, q), tag + " not sharp");
      auto b = build_example_report(ex);  // the trapped pipeline must agree
      c.expect(b.rank == g, tag + " report rank");
      c.expect(seconds_since(t0) < 1.0, tag + " slower than 1 s");
    }
  }

  void oracle_equivalence(Check& c) {
    testing::Rng rng(0x5eed0001);
    auto         groups = testing::small_groups();
    int          n = 0, agree = 0;
    for (int i = 0; i < 400 && n < 250; ++i) {
      auto e = testing::random_epimorphism(rng, groups, testing::Filter::torsion_free);
      if (!e) {
        continue;
      }
      c.expect(e->target().order() <= 48, "group larger than 48");
      ++n;
      long long euler = euler_rank(*e);
      auto      rs    = reidemeister_schreier(*e);
      agree += static_cast<long long>(rs.rank) == euler;
    }
    c.expect(n >= 200, "only " + std::to_string(n) + " pairs drawn");
    c.expect(agree == n, std::to_string(n - agree) + " disagreements");
    c.why << (c.ok ? "" : " ") << "[" << agree << "/" << n << "]";
  }

  void four_circle_example(Check& c) {
    auto ex = example_7_2(Complex(2, 2), 0.5);
    auto const& geo = *ex.geometry;
    c.expect(geo.relations.size() == 8, "expected eight relations");
    for (auto const& r : geo.relations) {
      c.expect(r.deviation < 1e-9, r.name);
    }
    c.expect(geo.report.passed, "checker: " + geo.report.condition);
    auto const& G = ex.epimorphism.target();
    c.expect(G.order() == 8 && G.exponent() == 2 && G.is_abelian(),
             "quotient is not Z2^3");
    std::vector<long long> m;
    for (auto t : ex.designated) {
      m.push_back(m_of(ex.epimorphism, t));
    }
    c.expect(m == std::vector<long long>{3, 1, 1}, "profiles");
    long long g = kernel_rank(ex.epimorphism).rank;
    c.expect(g == 2, "rank");
    c.expect(Rational(m[0] + m[1] + m[2]) == triple_bound(2, {}), "sum is not 5");
  }

  void six_circle_example(Check& c) {
    auto ex = example_7_3();
    long long g = kernel_rank(ex.epimorphism).rank;
    c.expect(g == 3, "rank");
    std::vector<long long> m;
    for (auto t : ex.designated) {
      m.push_back(m_of(ex.epimorphism, t));
    }
    c.expect(m == std::vector<long long>{2, 2, 4}, "profiles");
    c.expect(Rational(m[0] + m[1] + m[2]) == triple_bound(3, {}), "sum is not 8");
    c.expect(ex.geometry && ex.geometry->system.entries.size() == 6, "six circles");
    c.expect(ex.geometry && ex.geometry->report.passed, "checker");
  }

  void dihedral_three(Check& c) {
    for (long long n : {1, 2}) {
      auto      ex = example_7_4(n);
      long long g  = kernel_rank(ex.epimorphism).rank;
      auto      t  = "n=" + std::to_string(n);
      c.expect(g == 6 * n + 4, t + " rank");
      long long sum = 0;
      for (auto x : ex.designated) {
        long long m = m_of(ex.epimorphism, x);
        c.expect(m == 2 * n + 3, t + " profile");
        sum += m;
      }
      c.expect(sum == g + 5, t + " sum");
      auto b = check_bounds(ex.epimorphism, g, ex.designated);
      c.expect(b.triple && b.triple->sharp && !b.violated(), t + " not sharp");
    }
  }

  void z2_dihedral(Check& c) {
    for (long long r : {2, 3, 4}) {
      auto      ex = example_7_5(r);
      long long g  = kernel_rank(ex.epimorphism).rank;
      auto      t  = "r=" + std::to_string(r);
      c.expect(g == 2 * r + 1, t + " rank");
      long long m1 = m_of(ex.epimorphism, ex.designated[0]);
      long long m2 = m_of(ex.epimorphism, ex.designated[1]);
      long long m3 = m_of(ex.epimorphism, ex.designated[2]);
      c.expect(m1 == 2 * r && m2 == 4 && m3 == 4, t + " profiles");
      // sum * r == (r + 1) g + 5 r - 1, in integers
      c.expect((m1 + m2 + m3) * r == (r + 1) * g + 5 * r - 1, t + " sum");
      auto h = describe_subgroup(ex.epimorphism.target(), ex.designated);
      c.expect(h.z2_times_dihedral && h.r == r, t + " subgroup");
      auto b = triple_bound(g, h);
      c.expect((m1 + m2 + m3) * b.denominator() == b.numerator(), t + " bound");
    }
  }

  void impossibility(Check& c) {
    for (auto [g, m] : {std::pair{2LL, 2LL}, {3, 3}}) {
      auto t0  = Clock::now();
      auto res = exhaustive_impossibility_search(g, {m, m, m});
      auto s   = seconds_since(t0);
      auto t   = "g=" + std::to_string(g);
      c.expect(res.witnesses.empty(), t + " has witnesses");
      c.expect(s < 60, t + " slower than 60 s");
      c.why << (c.ok ? "" : " ") << "[" << t << ": " << res.structures
            << " structures, " << res.epimorphisms << " maps]";
    }
  }

  void property_suite(Check& c) {
    testing::Rng rng(0x5eed0008);
    auto         groups = testing::small_groups();
    int          n = 0, profiles = 0;
    for (int i = 0; i < 800 && n < 520; ++i) {
      auto e = testing::random_epimorphism(rng, groups, testing::Filter::schottky_kernel);
      if (!e) {
        continue;
      }
      ++n;
      long long g       = kernel_rank(*e).rank;
      int       maximal = 0;
      for (auto const& p : all_profiles(*e)) {
        ++profiles;
        c.expect(p.profile.m() <= g + 1, "component count above g+1");
        maximal += p.profile.m() == g + 1;
      }
      c.expect(maximal <= 1 || g < 2, "two maximal classes");
    }
    c.expect(n >= 500, "only " + std::to_string(n) + " epimorphisms");
    c.why << (c.ok ? "" : " ") << "[" << n << " maps, " << profiles << " profiles]";
  }

  void classification(Check& c) {
    using K = TransformClass::Kind;
    c.expect(classify(MoebiusMap::conjugation()).kind == K::reflection, "conj");
    c.expect(classify(MoebiusMap(0, -1, 1, 0, Orientation::reversing)).kind
                 == K::imaginary_reflection,
             "-1/conj");
    c.expect(classify(MoebiusMap(2, 0, 0, 0.5)).kind == K::loxodromic, "4z");
    std::mt19937_64                        rng(0x5eed0009);
    std::uniform_real_distribution<double> U(-10, 10), R(0.05, 5);
    int                                    good = 0;
    for (int i = 0; i < 100; ++i) {
      auto circle = GenCircle::circle(Complex(U(rng), U(rng)), R(rng));
      auto f      = reflect_in(circle);
      auto fp     = fixed_points(f);
      good += classify(f).kind == K::reflection && fp.circle
              && fp.circle->approx_equal(circle, 1e-9);
    }
    c.expect(good == 100, std::to_string(100 - good) + " random reflections");
  }

}  // namespace

int main() {
  struct Criterion {
    char const*                 name;
    std::function<void(Check&)> run;
  };
  Criterion const all[] = {
      {"reflection family: ranks, profiles, sharp pair bound", reflection_family},
      {"Euler rank equals Reidemeister-Schreier rank", oracle_equivalence},
      {"4-circle example: relations, checker, Z2^3, (3,1,1)", four_circle_example},
      {"6-circle example: rank 3, (2,2,4), checker", six_circle_example},
      {"D3 family: rank 6n+4, equal profiles, sum g+5", dihedral_three},
      {"Z2 x D_r family: exact rational triple bound", z2_dihedral},
      {"impossibility scans (2,(2,2,2)) and (3,(3,3,3)) empty", impossibility},
      {"component bound and single maximal class", property_suite},
      {"classification of anticonformal and random reflections", classification},
  };
  int failed = 0;
  int i      = 0;
  for (auto const& cr : all) {
    ++i;
    Check c;
    auto  t0 = Clock::now();
    try {
      cr.run(c);
    } catch (std::exception const& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    double s = seconds_since(t0);
    failed += !c.ok;
    std::printf("[%s] %d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", i, cr.name, s,
                c.why.str().empty() ? "" : " ", c.why.str().c_str());
  }
  std::printf("%d/%d criteria passed\n", i - failed, i);
  return failed == 0 ? 0 : 1;
}
