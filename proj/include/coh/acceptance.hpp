#pragma once

#include <string>
#include <vector>

namespace coh {

struct criterion_result {
  int id = 0;
  bool pass = false;
  std::string title;
  std::vector<std::string> notes;
  double seconds = 0;
};

// criteria 1..11; throws std::out_of_range for other ids
criterion_result run_criterion(int id);
std::string format_result(const criterion_result& r, bool verbose);

}  // namespace coh
