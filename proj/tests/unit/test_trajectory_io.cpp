#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gmrfig/errors.hpp"
#include "gmrfig/trajectory_io.hpp"

using namespace gmrfig;

TEST_CASE("header is frozen") {
  std::ostringstream out;
  write_trajectory(out, {});
  CHECK(out.str() ==
        "iteration,beta_set,mu_hat,sigma2_hat,beta_mpl,H,g1_mumu,g1_s2s2,g1_s2b,g1_bb,"
        "g2_mumu,g2_s2s2,g2_s2b,g2_bb,upsilon_beta,acceptance_rate,status\n");
}

TEST_CASE("round trip of real records") {
  Schedule s;
  s.delta_beta = 0.05;
  RunOptions o;
  o.seed = 4;
  const auto recs = run_schedule(s, new_iid_configuration(16, 16, 0, 5, 4), {0, 5, 0, 8}, o);
  std::stringstream io;
  write_trajectory(io, recs);
  const auto back = read_trajectory(io);
  REQUIRE(back.size() == recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto& a = recs[k];
    const auto& b = back[k];
    CHECK(a.iteration == b.iteration);
    CHECK(a.beta_set == b.beta_set);
    CHECK(a.mu_hat == b.mu_hat);
    CHECK(a.sigma2_hat == b.sigma2_hat);
    CHECK(a.beta_mpl == b.beta_mpl);
    CHECK(a.entropy == b.entropy);
    CHECK(a.g1.x == b.g1.x);
    CHECK(a.g1.y == b.g1.y);
    CHECK(a.g1.z == b.g1.z);
    CHECK(a.g1.w == b.g1.w);
    CHECK(a.g2.x == b.g2.x);
    CHECK(a.g2.y == b.g2.y);
    CHECK(a.g2.z == b.g2.z);
    CHECK(a.g2.w == b.g2.w);
    CHECK(a.upsilon_beta == b.upsilon_beta);
    CHECK(a.acceptance_rate == b.acceptance_rate);
    CHECK(b.degenerate == false);
  }
}

TEST_CASE("degenerate rows carry the marker and NaNs") {
  TrajectoryRecord r = measure_snapshot(Configuration::constant(4, 4, 1.0), 0.2);
  r.iteration = 3;
  std::stringstream io;
  write_trajectory(io, {r});
  const std::string text = io.str();
  CHECK(text.find(",degenerate\n") != std::string::npos);
  const auto back = read_trajectory(io);
  REQUIRE(back.size() == 1);
  CHECK(back[0].degenerate);
  CHECK(std::isnan(back[0].beta_mpl));
}

TEST_CASE("malformed trajectories") {
  auto parse = [](const std::string& t) {
    std::istringstream in(t);
    return read_trajectory(in);
  };
  const std::string h(kTrajectoryHeader);
  CHECK_THROWS_AS(parse(""), FormatError);
  CHECK_THROWS_AS(parse("iteration,beta\n"), FormatError);
  CHECK_THROWS_AS(parse(h + "\n1,2,3\n"), FormatError);
  CHECK_THROWS_AS(parse(h + "\n1,0,0,1,0,0,0,0,0,0,0,0,0,0,0,1,maybe\n"), FormatError);
  CHECK_THROWS_AS(parse(h + "\n1.5,0,0,1,0,0,0,0,0,0,0,0,0,0,0,1,ok\n"), FormatError);
  CHECK(parse(h + "\n1,0,0,1,0,0,0,0,0,0,0,0,0,0,0,1,ok\n").size() == 1);
}
