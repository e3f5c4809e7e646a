#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "cosmo/graphkit/graph.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline cosmo::graph::KinGraph load_graph(const std::string& name) {
  return cosmo::graph::KinGraph::from_json(read_file("data/graphs/" + name + ".json"));
}

}  // namespace testsupport
