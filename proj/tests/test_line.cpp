#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twistor/line.hpp"

using namespace twistor;

TEST_CASE("line types per algebra") {
  CHECK(line_from_rep<Rat>(standard_rep<Rat>(-1, 1)).type() ==
        LineType::sphere);
  CHECK(line_from_rep<Rat>(standard_rep<Rat>(1, 1)).type() ==
        LineType::hyperboloid);
  CHECK(line_from_rep<Rat>(standard_rep<Rat>(0, 1, 1)).type() ==
        LineType::planes);
}

TEST_CASE("points must satisfy the quadric") {
  auto sphere = line_from_rep<Rat>(standard_rep<Rat>(-1, 1));
  auto p = point<Rat>(sphere, Rat(3, 5), Rat(4, 5), Rat(0));
  CHECK(is_complex_structure<Rat>(p.matrix));
  CHECK_THROWS_AS(point<Rat>(sphere, Rat(1), Rat(1), Rat(0)), off_quadric);
  auto hyp = line_from_rep<Rat>(standard_rep<Rat>(1, 1));
  auto q = point<Rat>(hyp, Rat(5, 4), Rat(3, 4), Rat(0));
  CHECK(is_complex_structure<Rat>(q.matrix));
  CHECK_THROWS_AS(point<Rat>(hyp, Rat(1), Rat(1), Rat(0)), off_quadric);
  // epsilon = 0: every (x, y, z) with x = +-1 works
  auto planes = line_from_rep<Rat>(standard_rep<Rat>(0, 1, 1));
  CHECK_NOTHROW(point<Rat>(planes, Rat(1), Rat(7), Rat(-2)));
  CHECK_THROWS_AS(point<Rat>(planes, Rat(2), Rat(0), Rat(0)), off_quadric);
}

TEST_CASE("membership recovers coordinates") {
  auto sphere = line_from_rep<Rat>(standard_rep<Rat>(-1, 1));
  auto p = point<Rat>(sphere, Rat(2, 7), Rat(3, 7), Rat(6, 7));
  auto coords = contains<Rat>(sphere, p.matrix);
  REQUIRE(coords.has_value());
  CHECK((*coords)[0] == Rat(2, 7));
  CHECK((*coords)[1] == Rat(3, 7));
  CHECK((*coords)[2] == Rat(6, 7));
  // A complex structure off the line is rejected.
  RatMat g = RatMat::Identity(4, 4);
  g(0, 1) = Rat(1);
  RatMat off = g * sphere.I * inverse<Rat>(g);
  REQUIRE(is_complex_structure<Rat>(off));
  CHECK_FALSE(contains<Rat>(sphere, off).has_value());
  CHECK_THROWS_AS(contains<Rat>(sphere, g), not_complex_structure);
}

TEST_CASE("components: sphere is connected, the others are not") {
  auto sphere = line_from_rep<Rat>(standard_rep<Rat>(-1, 1));
  auto p = point<Rat>(sphere, Rat(1), Rat(0), Rat(0));
  CHECK_THROWS_AS(component_of<Rat>(sphere, p), connected_line);
  auto hyp = line_from_rep<Rat>(standard_rep<Rat>(1, 1));
  CHECK(component_of<Rat>(hyp, point<Rat>(hyp, Rat(5, 4), Rat(3, 4), Rat(0))) ==
        '+');
  CHECK(component_of<Rat>(hyp, point<Rat>(hyp, Rat(-5, 4), Rat(3, 4),
                                          Rat(0))) == '-');
  auto planes = line_from_rep<Rat>(standard_rep<Rat>(0, 1, 1));
  CHECK(component_of<Rat>(planes, point<Rat>(planes, Rat(1), Rat(2), Rat(3))) ==
        '+');
  CHECK(component_of<Rat>(planes, point<Rat>(planes, Rat(-1), Rat(2),
                                             Rat(3))) == '-');
}

TEST_CASE("line through two points reproduces the line") {
  auto hm = standard_rep<Rat>(-1, 1);
  auto sphere = line_from_rep<Rat>(hm);
  auto p = point<Rat>(sphere, Rat(3, 5), Rat(4, 5), Rat(0));
  auto through = line_through<Rat>(hm.I, p.matrix);
  CHECK(through.epsilon == -1);
  CHECK(equal_lines<Rat>(sphere, through));

  auto h1 = standard_rep<Rat>(1, 1);
  auto hyp = line_from_rep<Rat>(h1);
  auto q = point<Rat>(hyp, Rat(5, 4), Rat(3, 4), Rat(0));
  auto through2 = line_through<Rat>(h1.I, q.matrix);
  CHECK(through2.epsilon == 1);
  CHECK(equal_lines<Rat>(hyp, through2));

  auto h0 = standard_rep<Rat>(0, 1, 1);
  auto planes = line_from_rep<Rat>(h0);
  auto through3 = line_through<Rat>(h0.I, RatMat(h0.I + h0.B));
  CHECK(through3.epsilon == 0);
  CHECK(equal_lines<Rat>(planes, through3));
}

TEST_CASE("sampled points stay on the requested component") {
  auto hyp = line_from_rep<Rat>(standard_rep<Rat>(1, 1));
  for (auto& p : sample_points<Rat>(hyp, 5, '+'))
    CHECK(component_of<Rat>(hyp, p) == '+');
  for (auto& p : sample_points<Rat>(hyp, 5, '-'))
    CHECK(component_of<Rat>(hyp, p) == '-');
  auto sphere = line_from_rep<Rat>(standard_rep<Rat>(-1, 1));
  auto pts = sample_points<Rat>(sphere, 7);
  CHECK(pts.size() == 7);
  for (auto& p : pts) CHECK(is_complex_structure<Rat>(p.matrix));
}

TEST_CASE("float-domain line through normalizes the generator") {
  auto h1 = standard_rep<double>(1, 1);
  RealMat j2 = 1.25 * h1.I + 0.75 * h1.B;
  auto line = line_through<double>(h1.I, j2);
  CHECK(line.c == doctest::Approx(1.0));
  CHECK((line.B * line.B - RealMat::Identity(4, 4)).norm() < 1e-9);
}
