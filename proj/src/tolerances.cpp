#include "qamp/tolerances.hpp"

namespace qamp {

namespace {
bool g_unitary_checks = false;
}

Tolerances& tolerances() {
  static Tolerances instance;
  return instance;
}

void set_unitary_construction_checks(bool enabled) { g_unitary_checks = enabled; }

bool unitary_construction_checks() { return g_unitary_checks; }

}  // namespace qamp
