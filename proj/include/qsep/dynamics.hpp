#pragma once

#include "qsep/instance.hpp"

namespace qsep {

// Linear-ramp annealing schedule s(t) = t/T, integrated in `steps` strides.
struct AnnealSchedule {
    double total_time = 20.0;
    int steps = 4000;
};

struct QaResult {
    double success = 0.0;     // population of the target at t = T
    double norm_error = 0.0;  // | ||psi|| - 1 | at the end of the run
};

// Anneal H(s) = mixer_sign*(1-s)*Sum sigma_x + s*H_P from |+>^n, reduced to
// the (n+1)-dimensional permutation-symmetric subspace. mixer_sign = -1
// makes |+> the instantaneous ground state at s = 0.
QaResult qa_symmetric(const HammingSpectrum& spectrum, const AnnealSchedule& schedule,
                      int mixer_sign = -1);

// Instance-level wrapper; extra 2pi terms break the shell structure.
QaResult qa_symmetric(const Instance& instance, const AnnealSchedule& schedule,
                      int mixer_sign = -1);

// Same propagation in the full 2^n space (n <= 14), extra_terms included.
QaResult qa_statevector(const Instance& instance, const AnnealSchedule& schedule,
                        int mixer_sign = -1);

}  // namespace qsep
