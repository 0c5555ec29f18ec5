#include <doctest.h>

#include <sstream>

#include "gaborcert/config.hpp"
#include "gaborcert/error.hpp"

using namespace gaborcert;

TEST_CASE("config round trip") {
  RunConfig c;
  c.window = "gevrey:3";
  c.alpha = 0.1 + 0.2;
  c.beta = 1.0 / 3.0;
  c.alpha_grid = {0.9, 1.0, 1.1};
  c.seed = 18446744073709551615ULL;
  c.out = "result.json";
  c.policy = "any";
  std::istringstream in(emit_config(c));
  CHECK(parse_config(in) == c);

  std::istringstream defaults(emit_config(RunConfig{}));
  CHECK(parse_config(defaults) == RunConfig{});
}

TEST_CASE("config parsing") {
  std::istringstream in("# comment\n\nalpha = 0.5  # trailing\n  beta=1.5\n");
  const RunConfig c = parse_config(in);
  CHECK(c.alpha == 0.5);
  CHECK(c.beta == 1.5);
  CHECK(c.window == "bump");
}

TEST_CASE("config errors carry line and field") {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_config(in);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("alpha = 1\nbeta = x\n").find("line 2") != std::string::npos);
  CHECK(message("alpha = 1\nbeta = x\n").find("'beta'") != std::string::npos);
  CHECK(message("colour = red\n").find("unknown key 'colour'") != std::string::npos);
  CHECK(message("just words\n").find("line 1") != std::string::npos);
  CHECK(message("extent = -3\n").find("'extent'") != std::string::npos);
  CHECK(message("alpha = -1\n").find("positive") != std::string::npos);
  CHECK(message("seed = -4\n").find("'seed'") != std::string::npos);
  CHECK(message("alpha = 1e999\n").find("'alpha'") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg"), ConfigError);
}

TEST_CASE("window descriptors") {
  CHECK(make_window("bump").kind_name() == "bump");
  CHECK(make_window("gevrey:4").descriptor() == "gevrey:4");
  const Window c = make_window("char:-1:2");
  CHECK(c.support_lo() == -1.0);
  CHECK(c.support_hi() == 2.0);
  CHECK(make_window("char").support_hi() == 1.0);
  CHECK(make_window("poly:0:2").kind_name() == "poly");
  CHECK(make_window("oddbump").kind_name() == "oddbump");
  RunConfig cfg;
  cfg.quadrature_n = 128;
  const Window r = make_window("random:4", cfg);
  CHECK(r.kind_name() == "brownian");
  CHECK(r.sup_norm() == doctest::Approx(1.0));
  CHECK(make_window(make_window("char:0:3").descriptor()).support_hi() == 3.0);

  for (const char* bad : {"", "nosuch", "gevrey", "gevrey:0", "char:1", "char:2:1", "bump:3",
                          "csv:/nonexistent.csv", "random:x"})
    CHECK_THROWS_AS(make_window(bad), ConfigError);
}
