#include "rfk/parallel.hpp"

#include <cstdlib>
#include <string>

namespace rfk {

int default_jobs() {
  if (const char* env = std::getenv("FOURIER_KNOTS_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace rfk
