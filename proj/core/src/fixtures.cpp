#include "poisskit/fixtures.hpp"

#include <functional>
#include <utility>

#include "poisskit/error.hpp"

namespace poisskit {

namespace {

struct Relation {
  std::size_t i, j;
  const char* expr;
};

MultiVec from_relations(const std::vector<std::string>& names, const std::vector<Relation>& rel) {
  ChartPtr chart = make_chart(names);
  MultiVec pi(chart, 2);
  for (const auto& r : rel) pi.add({r.i, r.j}, parse_expr(r.expr, *chart));
  return pi;
}

struct Entry {
  const char* name;
  const char* summary;
  std::function<MultiVec()> build;
};

const std::vector<Entry>& zoo() {
  static const std::vector<Entry> entries = {
      {"so3", "linear structure on so(3)*: {x,y}=z, {y,z}=x, {z,x}=y",
       [] { return from_relations({"x", "y", "z"}, {{0, 1, "z"}, {1, 2, "x"}, {2, 0, "y"}}); }},
      {"sl2r", "linear structure on sl(2,R)*: {x,y}=-z, {y,z}=x, {z,x}=y",
       [] { return from_relations({"x", "y", "z"}, {{0, 1, "-z"}, {1, 2, "x"}, {2, 0, "y"}}); }},
      {"book", "book algebra dual: {x,z}=x, {y,z}=y",
       [] { return from_relations({"x", "y", "z"}, {{0, 2, "x"}, {1, 2, "y"}}); }},
      {"heisenberg", "Heisenberg algebra dual: {x,y}=z",
       [] { return from_relations({"x", "y", "z"}, {{0, 1, "z"}}); }},
      {"s3_standard", "quadratic structure on R^4 tangent to the spheres",
       [] {
         return from_relations({"x", "y", "z", "w"}, {{0, 1, "z^2 + w^2"},
                                                      {0, 2, "-y*z"},
                                                      {0, 3, "-y*w"},
                                                      {1, 2, "x*z"},
                                                      {1, 3, "w*x"}});
       }},
      {"s2_bruhat", "2(1 - x3) times the area structure on R^3",
       [] {
         return from_relations({"x1", "x2", "x3"}, {{0, 1, "2*(x3 - 1)*x3"},
                                                    {1, 2, "2*(x3 - 1)*x1"},
                                                    {0, 2, "-2*(x3 - 1)*x2"}});
       }},
      {"log2d", "log-symplectic plane: {y1,y2}=y1", [] { return from_relations({"y1", "y2"}, {{0, 1, "y1"}}); }},
      {"r2_xdxdy", "{x,y}=x on the plane", [] { return from_relations({"x", "y"}, {{0, 1, "x"}}); }},
  };
  return entries;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : zoo()) out.emplace_back(e.name);
  return out;
}

Fixture fixture(const std::string& name) {
  for (const auto& e : zoo())
    if (name == e.name) return {e.name, e.summary, e.build()};
  throw DomainError("unknown fixture '" + name + "'");
}

MultiVec canonical_bivector(std::size_t n) {
  if (n == 0) throw DomainError("canonical structure needs n >= 1");
  std::vector<std::string> names;
  if (n == 1) {
    names = {"q", "p"};
  } else {
    for (std::size_t i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
  }
  ChartPtr chart = make_chart(names);
  MultiVec pi(chart, 2);
  // ∂p ^ ∂q = -∂q ^ ∂p
  for (std::size_t i = 0; i < n; ++i) pi.add({i, n + i}, RatFunc(2 * n, Rational(-1)));
  return pi;
}

}  // namespace poisskit
