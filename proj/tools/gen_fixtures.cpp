// Writes the bundled JSON fixtures from the built-in constructions so the
// files and the in-memory objects can never drift apart.

#include "picobar/json_io.hpp"
#include "picobar/sset.hpp"

#include <fstream>
#include <iostream>
#include <string>

using namespace picobar;

namespace {

void put(const std::string& dir, const std::string& name, const json& doc) {
  std::ofstream out(dir + "/" + name);
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
  out << doc.dump(2) << "\n";
  std::cout << name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";

  put(dir, "nerve_z2.json",
      serialize_simplicial_set(nerve_of_group(cyclic_group(2), 4).X));
  put(dir, "nerve_z3.json",
      serialize_simplicial_set(nerve_of_group(cyclic_group(3), 3).X));
  put(dir, "nerve_z4.json",
      serialize_simplicial_set(nerve_of_group(cyclic_group(4), 3).X));
  put(dir, "nerve_s3.json",
      serialize_simplicial_set(nerve_of_group(symmetric_group_3(), 3).X));
  put(dir, "circle.json", serialize_simplicial_set(minimal_circle(2)));
  put(dir, "wedge2.json", serialize_simplicial_set(wedge_of_circles(2, 2)));
  put(dir, "group_s3.json", serialize_group(symmetric_group_3()));

  // rank-one modules over the loop algebra of nerve_z2: the action matrix of
  // the class {(1)} is (value of the generator) - 1
  json sign;
  sign["rank"] = 1;
  sign["action"] = {{"1", {{1}}}, {"{(1)}", {{-2}}}};
  put(dir, "sign.json", sign);
  json trivial;
  trivial["rank"] = 1;
  trivial["action"] = {{"1", {{1}}}, {"{(1)}", {{0}}}};
  put(dir, "trivial.json", trivial);

  // negative fixture: the 2-simplex "t" breaks d0 d1 = d0 d0
  json bad;
  bad["truncation"] = 2;
  bad["simplices"] = {{"0", {"v", "w"}}, {"1", {"a", "b"}}, {"2", {"t"}}};
  bad["faces"] = {
      {"a", {{{"s", json::array()}, {"base", "w"}},
             {{"s", json::array()}, {"base", "v"}}}},
      {"b", {{{"s", json::array()}, {"base", "v"}},
             {{"s", json::array()}, {"base", "v"}}}},
      {"t", {{{"s", json::array()}, {"base", "a"}},
             {{"s", json::array()}, {"base", "b"}},
             {{"s", json::array()}, {"base", "b"}}}}};
  put(dir, "bad_faces.json", bad);
  return 0;
}
