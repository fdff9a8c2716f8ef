#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "ogaprox/diagnostics.hpp"
#include "ogaprox/problems.hpp"
#include "ogaprox/trace_io.hpp"

using namespace ogaprox;

TEST_CASE("format_g17 round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.4992, 1.01574375}) {
    std::string s = format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("trace CSV has the full column set with scalar coordinates") {
  SaddleProblem p = bilinear_scalar();
  Trace t = run_with_diagnostics(p, ConstantUnit{0.2, 0.2, 2.0}, {1.0}, {1.0}, 10);
  std::ostringstream out;
  write_trace_csv(t, out);
  std::istringstream in(out.str());
  TraceTable table = read_trace_csv(in);

  for (const char* col : {"k", "tau_k", "sigma_k", "theta_k", "t_k", "x_norm", "y_norm",
                          "xhat_norm", "yhat_norm", "f_ergodic", "gap_ergodic",
                          "value_error", "lower_bound", "upper_bound", "cert_slack",
                          "x_0", "xhat_0", "y_0", "yhat_0"}) {
    CHECK_NOTHROW(table.column(col));
  }
  CHECK(table.rows() == 10);
}

TEST_CASE("CSV write-read preserves every value exactly") {
  SaddleProblem p = convex_strongly_concave(1.0);
  Trace t = run_with_diagnostics(p, Accelerated{0.5, 0.5, 2.0}, {1.0}, {1.0}, 100);
  std::ostringstream out;
  write_trace_csv(t, out);
  std::istringstream in(out.str());
  TraceTable table = read_trace_csv(in);

  const auto& fe = table.column("f_ergodic");
  const auto& lo = table.column("lower_bound");
  const auto& hi = table.column("upper_bound");
  const auto& x0c = table.column("x_0");
  REQUIRE(fe.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(fe[i] == t.rows[i].f_ergodic);
    CHECK(x0c[i] == t.xs[i + 1][0]);
    if (std::isfinite(t.rows[i].lower_bound)) {
      CHECK(lo[i] == t.rows[i].lower_bound);
      CHECK(hi[i] == t.rows[i].upper_bound);
    }
  }
}

TEST_CASE("identical runs serialize to byte-identical CSV") {
  auto make = [] {
    SaddleProblem p = strongly_convex_strongly_concave(1.0, 1.0);
    Trace t = run_with_diagnostics(p, LinearRate{0.6, 1.0}, {1.0}, {1.0}, 200);
    std::ostringstream out;
    write_trace_csv(t, out);
    return out.str();
  };
  CHECK(make() == make());
}

TEST_CASE("reader rejects malformed input") {
  {
    std::istringstream in("");
    CHECK_THROWS(read_trace_csv(in));
  }
  {
    std::istringstream in("a,b\n1,2,3\n");
    CHECK_THROWS(read_trace_csv(in));
  }
  {
    std::istringstream in("a,b\n1\n");
    CHECK_THROWS(read_trace_csv(in));
  }
}
