#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "coh/acceptance.hpp"

// one line per criterion; -q drops the detail lines, numbers select criteria
int main(int argc, char** argv) {
  bool verbose = true;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "-q"))
      verbose = false;
    else
      ids.push_back(std::stoi(argv[i]));
  }
  if (ids.empty())
    for (int i = 1; i <= 11; ++i) ids.push_back(i);
  int failed = 0;
  for (int id : ids) {
    auto r = coh::run_criterion(id);
    failed += !r.pass;
    std::cout << coh::format_result(r, verbose) << std::flush;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n");
  return failed ? 1 : 0;
}
