#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hrix/csv.hpp"
#include "hrix/rng.hpp"
#include "hrix/stats.hpp"
#include "hrix/timeseries.hpp"

using namespace hrix;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "hrix_core_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

TimeSeries make_series(std::vector<double> v, const std::string& id = "s") {
  return TimeSeries(id, Month{2000, 1}, std::move(v));
}

}  // namespace

TEST_CASE("month parsing and arithmetic") {
  Month m = Month::parse("1971-01");
  CHECK(m.year == 1971);
  CHECK(m.mon == 1);
  CHECK(Month::parse("1971-01-31") == m);
  CHECK(m.plus(11) == Month{1971, 12});
  CHECK(m.plus(12) == Month{1972, 1});
  CHECK(m.plus(-1) == Month{1970, 12});
  CHECK(Month{2009, 4}.break_label() == "2009:M4");
  CHECK(Month{1984, 3}.str() == "1984-03");
  CHECK_THROWS_AS(Month::parse("1971/01"), Error);
  CHECK_THROWS_AS(Month::parse("1971-13"), Error);
  CHECK_THROWS_AS(Month::parse("1971-00-01"), Error);
}

TEST_CASE("series construction enforces finite values") {
  CHECK_THROWS_AS(make_series({}), Error);
  CHECK_THROWS_AS(make_series({1.0, std::nan("")}), Error);
  TimeSeries s = make_series({1.0, 2.0, 3.0});
  CHECK(s.date(2) == Month{2000, 3});
  CHECK(s.end() == Month{2000, 3});
}

TEST_CASE("panel rejects mismatched axes and duplicate ids") {
  TimeSeries a("a", Month{2000, 1}, {1, 2, 3});
  TimeSeries b("b", Month{2000, 2}, {1, 2, 3});
  CHECK_THROWS_AS(Panel({a, b}), Error);
  TimeSeries a2("a", Month{2000, 1}, {4, 5, 6});
  CHECK_THROWS_AS(Panel({a, a2}), Error);
  Panel p({a, a2.renamed("c")});
  CHECK(p.n_cols() == 2);
  CHECK(p.col("c")[0] == 4.0);
}

TEST_CASE("load_panel parses, sorts, and validates") {
  auto path = temp_file("ok.csv");
  write_text(path,
             "date,A,B\n"
             "2000-03,3,30\n"
             "2000-01,1,10\n"
             "2000-02,2,20\n");
  Panel p = load_panel(path, "date", {"B", "A"});
  CHECK(p.n_rows() == 3);
  CHECK(p.ids() == std::vector<std::string>{"B", "A"});  // requested order
  CHECK(p.col("A").values() == std::vector<double>{1, 2, 3});
  CHECK(p.start() == Month{2000, 1});

  Panel all = load_panel(path, "date");
  CHECK(all.ids() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("load_panel single row and error taxonomy") {
  auto one = temp_file("one.csv");
  write_text(one, "date,A\n2000-01,1.5\n");
  CHECK(load_panel(one, "date").n_rows() == 1);

  auto gap = temp_file("gap.csv");
  write_text(gap, "date,A\n2000-01,1\n2000-03,3\n");
  CHECK_THROWS_WITH_AS(load_panel(gap, "date"), doctest::Contains("2000-02"), Error);
  try {
    load_panel(gap, "date");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::gap_in_dates);
  }

  auto missing = temp_file("missing.csv");
  write_text(missing, "date,A,B\n2000-01,1,\n");
  try {
    load_panel(missing, "date");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_value);
  }

  auto badnum = temp_file("badnum.csv");
  write_text(badnum, "date,A\n2000-01,xyz\n");
  try {
    load_panel(badnum, "date");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }

  auto dup = temp_file("dup.csv");
  write_text(dup, "date,A\n2000-01,1\n2000-01,2\n");
  try {
    load_panel(dup, "date");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_date);
  }

  try {
    load_panel(temp_file("nope.csv"), "date");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::file_not_found);
  }
}

TEST_CASE("csv round-trip is bit-identical for 12-significant-digit text") {
  Rng rng(99);
  std::vector<double> raw(40);
  for (auto& v : raw) v = std::strtod(format_value(rng.normal() * 1000.0).c_str(), nullptr);
  Panel p({TimeSeries("A", Month{1990, 5}, raw)});
  auto path = temp_file("roundtrip.csv");
  write_panel(p, path);
  Panel q = load_panel(path, "date");
  for (std::size_t t = 0; t < raw.size(); ++t) {
    CHECK(q.col("A")[t] == raw[t]);  // exact
  }
  auto path2 = temp_file("roundtrip2.csv");
  write_panel(q, path2);
  std::ifstream f1(path), f2(path2);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
}

TEST_CASE("transforms") {
  SUBCASE("standardize hits mean 0 and std 1") {
    TimeSeries s = transform(make_series({2, 4, 6}), Transform::standardize);
    CHECK(std::fabs(mean(s.values())) < 1e-10);
    CHECK(std::fabs(sample_std(s.values()) - 1.0) < 1e-10);
    TimeSeries again = transform(s, Transform::standardize);
    for (std::size_t t = 0; t < s.size(); ++t) CHECK(std::fabs(again[t] - s[t]) < 1e-10);
  }
  SUBCASE("diff drops the first observation") {
    TimeSeries d = transform(make_series({1, 3, 6}), Transform::diff);
    CHECK(d.values() == std::vector<double>{2, 3});
    CHECK(d.start() == Month{2000, 2});
  }
  SUBCASE("pct_change") {
    TimeSeries d = transform(make_series({2, 3, 6}), Transform::pct_change);
    CHECK(std::fabs(d[0] - 0.5) < 1e-15);
    CHECK(std::fabs(d[1] - 1.0) < 1e-15);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(transform(make_series({1, -1, 2}), Transform::log), Error);
    try {
      transform(make_series({5, 5, 5}), Transform::standardize);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::zero_variance);
    }
    CHECK_THROWS_AS(transform(make_series({1}), Transform::diff), Error);
    CHECK_THROWS_AS(transform(make_series({0, 1}), Transform::pct_change), Error);
  }
}

TEST_CASE("describe on a symmetric series has zero skew") {
  std::vector<double> v;
  for (int i = 0; i < 50; ++i) {
    v.push_back(-1);
    v.push_back(0);
    v.push_back(1);
  }
  SummaryStats s = describe(make_series(v));
  CHECK(std::fabs(s.skewness) < 1e-10);
  CHECK(s.n == 150);
}

TEST_CASE("describe matches the frozen hand computation") {
  // Moments, JB and Q(1) recomputed by hand (spreadsheet-style) for this
  // fixed 10-point data set; values frozen here.
  TimeSeries s = make_series({2.1, -0.4, 3.7, 1.2, 0.0, -1.5, 2.8, 0.9, -0.7, 1.6});
  SummaryStats st = describe(s);
  CHECK(st.n == 10);
  CHECK(st.mean == doctest::Approx(0.97).epsilon(1e-12));
  CHECK(st.std_dev == doctest::Approx(1.6411716681823518).epsilon(1e-12));
  CHECK(st.min == -1.5);
  CHECK(st.max == 3.7);
  CHECK(st.skewness == doctest::Approx(0.13165571116693603).epsilon(1e-12));
  CHECK(st.excess_kurtosis == doctest::Approx(-0.9926237191640235).epsilon(1e-12));
  CHECK(st.jarque_bera.available);
  CHECK(st.jarque_bera.stat == doctest::Approx(0.4394311470743771).epsilon(1e-12));
  CHECK(st.jarque_bera.p_value == doctest::Approx(0.802747088009849).epsilon(1e-12));
  CHECK(st.ljung_box_q1.stat == doctest::Approx(1.478024408518383).epsilon(1e-12));
  CHECK(st.ljung_box_q1.p_value == doctest::Approx(0.22408387789954895).epsilon(1e-12));
}

TEST_CASE("describe JB p-value behaves under the null") {
  int calm = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    std::vector<double> v(576);
    for (auto& x : v) x = rng.normal();
    SummaryStats s = describe(make_series(v));
    if (s.jarque_bera.p_value > 0.05) ++calm;
  }
  CHECK(calm >= 18);
}

TEST_CASE("describe moments are translation and scale invariant") {
  Rng rng(5);
  std::vector<double> v(200);
  for (auto& x : v) x = rng.normal() + 0.3 * rng.uniform();
  SummaryStats base = describe(make_series(v));
  std::vector<double> shifted(v), scaled(v);
  for (auto& x : shifted) x += 17.5;
  for (auto& x : scaled) x *= 3.25;
  SummaryStats sh = describe(make_series(shifted));
  SummaryStats sc = describe(make_series(scaled));
  CHECK(std::fabs(sh.skewness - base.skewness) < 1e-10);
  CHECK(std::fabs(sh.excess_kurtosis - base.excess_kurtosis) < 1e-10);
  CHECK(std::fabs(sc.skewness - base.skewness) < 1e-10);
  CHECK(std::fabs(sc.excess_kurtosis - base.excess_kurtosis) < 1e-10);
}

TEST_CASE("corr_matrix basics") {
  Rng rng(11);
  std::vector<double> a(60), b(60), c(60);
  for (std::size_t t = 0; t < 60; ++t) {
    a[t] = rng.normal();
    b[t] = 0.5 * a[t] + rng.normal();
    c[t] = rng.normal();
  }
  Panel p({TimeSeries("a", Month{2000, 1}, a), TimeSeries("b", Month{2000, 1}, b),
           TimeSeries("c", Month{2000, 1}, c)});
  CorrMatrix cm = corr_matrix(p);

  SUBCASE("self correlation is 1 with ***") {
    for (int i = 0; i < 3; ++i) {
      CHECK(cm.rho(i, i) == 1.0);
      CHECK(cm.stars[i][i] == "***");
    }
  }
  SUBCASE("antipodal series correlate at -1") {
    std::vector<double> neg(a);
    for (auto& x : neg) x = -x;
    Panel q({TimeSeries("a", Month{2000, 1}, a), TimeSeries("na", Month{2000, 1}, neg)});
    CorrMatrix c2 = corr_matrix(q);
    CHECK(c2.rho(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("matches brute-force pairwise computation") {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const auto& x = p.col(i).values();
        const auto& y = p.col(j).values();
        double mx = 0, my = 0;
        for (std::size_t t = 0; t < x.size(); ++t) {
          mx += x[t];
          my += y[t];
        }
        mx /= 60.0;
        my /= 60.0;
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t t = 0; t < x.size(); ++t) {
          sxy += (x[t] - mx) * (y[t] - my);
          sxx += (x[t] - mx) * (x[t] - mx);
          syy += (y[t] - my) * (y[t] - my);
        }
        CHECK(std::fabs(cm.rho(i, j) - sxy / std::sqrt(sxx * syy)) < 1e-12);
      }
    }
  }
  SUBCASE("invariant under affine rescaling of a column") {
    std::vector<double> scaled(b);
    for (auto& x : scaled) x = 100.0 * x - 40.0;
    Panel q({TimeSeries("a", Month{2000, 1}, a), TimeSeries("b", Month{2000, 1}, scaled),
             TimeSeries("c", Month{2000, 1}, c)});
    CorrMatrix c2 = corr_matrix(q);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(std::fabs(c2.rho(i, j) - cm.rho(i, j)) < 1e-10);
    }
  }
  SUBCASE("star thresholds") {
    CHECK(corr_stars(0.0005) == "***");
    CHECK(corr_stars(0.005) == "**");
    CHECK(corr_stars(0.04) == "*");
    CHECK(corr_stars(0.2) == "");
  }
}

TEST_CASE("slice and common_range") {
  TimeSeries s("s", Month{2000, 1}, {1, 2, 3, 4, 5, 6});
  TimeSeries cut = s.slice(Month{2000, 3}, Month{2000, 5});
  CHECK(cut.values() == std::vector<double>{3, 4, 5});
  CHECK_THROWS_AS(s.slice(Month{2001, 1}, Month{2001, 5}), Error);
  DateRange r = common_range({{Month{2000, 1}, Month{2000, 6}}, {Month{2000, 4}, Month{2001, 1}}});
  CHECK(r.from == Month{2000, 4});
  CHECK(r.to == Month{2000, 6});
  CHECK(r.size() == 3);
  CHECK_THROWS_AS(common_range({{Month{2000, 1}, Month{2000, 2}}, {Month{2001, 1}, Month{2001, 2}}}),
                  Error);
}
