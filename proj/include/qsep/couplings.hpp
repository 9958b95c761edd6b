#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsep/exact.hpp"
#include "qsep/instance.hpp"
#include "qsep/qaoa.hpp"

namespace qsep {

// Coupling coefficient; exact values are rationals in quarter-pi units so
// the brute-force expansion check can demand bit-for-bit equality.
struct Coupling {
    bool exact = false;
    Rational units;        // quarter-pi units, valid when exact
    double radians = 0.0;  // always valid

    static Coupling from_units(const Rational& u) {
        return {true, u, u.to_double() * kQuarterPi};
    }
    static Coupling from_radians(double r) { return {false, Rational(0), r}; }
};

struct SpinGlass {
    int n = 0;
    int max_locality = 0;
    bool exact = true;  // every coupling carries an exact rational
    // key: sorted duplicate-free site subset; empty key = constant offset
    std::map<std::vector<int>, Coupling> terms;
};

// Expands a Hamming-polynomial instance (degree <= 4 in the distance) into
// explicit on-site fields and up-to-4-local couplings; extra 2pi-multiple
// terms are appended verbatim.
SpinGlass expand_hamming_polynomial(const Instance& instance);

double spin_glass_energy(const SpinGlass& sg, const std::string& bits);
// Exact energy in quarter-pi units; requires sg.exact.
Rational spin_glass_energy_exact(const SpinGlass& sg, const std::string& bits);

struct ExpansionReport {
    bool pass = false;
    bool exact_path = false;
    double max_deviation = 0.0;  // radians; exactly 0 on the integer path
    int states_checked = 0;
};

// Brute-force check over all 2^n basis states that the expansion reproduces
// the instance diagonal (n <= 14).
ExpansionReport verify_expansion(const SpinGlass& sg, const Instance& instance);

struct Gate {
    enum class Kind { MultiZRotation, XRotation };
    Kind kind;
    std::vector<int> sites;
    double angle = 0.0;  // radians
};

struct CircuitDescription {
    int n = 0;
    std::vector<Gate> gates;
};

// One multi-Z rotation per nonconstant term (angle 2*gamma*coefficient;
// the constant is an unobservable global phase), then RX(2*beta) everywhere.
CircuitDescription export_circuit(const SpinGlass& sg, const QaoaParams& params);

// Text rendering, one gate per line. expand_ladders=true lowers each k-local
// multi-Z rotation to a CX ladder + RZ + inverse ladder (2(k-1) CX lines).
std::string render_circuit(const CircuitDescription& circ, const QaoaParams& params,
                           bool expand_ladders = false);

}  // namespace qsep
