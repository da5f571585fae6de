#pragma once

#include <functional>
#include <vector>

namespace hrix {

struct NmOptions {
  int max_evals = 20000;
  double tol_diameter = 1e-8;  // stop when the simplex fits in a box this wide
  double init_step = 0.25;
};

struct NmResult {
  std::vector<double> x;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Downhill simplex minimization. Stops when the simplex diameter (max
// coordinate spread) falls below tol_diameter or the evaluation budget runs out.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, const NmOptions& opt = {});

}  // namespace hrix
