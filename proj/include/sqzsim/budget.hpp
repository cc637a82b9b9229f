#pragma once

// Loss, phase and technical-noise budget composition and reporting.

#include <string>
#include <vector>

#include "sqzsim/chain.hpp"

namespace sqz {

enum class LossRule { kMultiplicative, kLinearSum };
enum class PhaseRule { kLinearSum, kQuadratureSum };

struct LossBudget {
    std::vector<std::pair<std::string, double>> items; // loss fraction in percent
    double total_pct = 0.0;
};

struct PhaseBudget {
    std::vector<std::pair<std::string, double>> items; // rms in mrad
    double total_mrad = 0.0;
};

struct NoiseBudget {
    std::vector<std::pair<std::string, double>> items; // dB relative to out-of-loop SNL
    double total_db = 0.0;
};

// Total loss in percent. Multiplicative rule: 100*(1 - prod(1 - l_i/100)).
double compose_loss(std::span<const double> items_pct, LossRule rule = LossRule::kMultiplicative);

// Total rms phase in mrad. Linear sum by default.
double compose_phase(std::span<const double> items_mrad, PhaseRule rule = PhaseRule::kLinearSum);

// Total of dB-valued noise contributions (incoherent superposition).
double technical_noise_total(std::span<const double> items_db);

// Itemized technical-noise budget of a stabilization configuration at a
// reference frequency, each entry in dB relative to the out-of-loop SNL.
struct BudgetConfig {
    LaserParams laser;
    PassiveStageParams passive;
    bool passive_enabled = true;
    LoopParams loop;
    bool active_enabled = false;
    double v_darkport = 1.0;         // squeezed-vacuum variance at the dark port
    double reference_freq_hz = 50e3; // budget evaluation frequency
};

NoiseBudget budget_report(const BudgetConfig& cfg);

} // namespace sqz
