#ifndef ASYMPARTITA_DIAGNOSTIC_HPP
#define ASYMPARTITA_DIAGNOSTIC_HPP

#include <string>

namespace asympartita {

/// One named pass/fail check; the measured value and its tolerance travel together.
struct Diagnostic {
  std::string name;
  bool pass = false;
  double measured = 0;
  double tolerance = 0;
  std::string detail;
};

}  // namespace asympartita

#endif  // ASYMPARTITA_DIAGNOSTIC_HPP
