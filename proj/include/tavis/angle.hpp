// angle.hpp: the mixing angle phi_n accumulated on the outermost branch, its
// asymptotic forms, and the inverse problem g*sigma(phi).

#pragma once

#include <string>
#include <vector>

namespace tavis {

enum class AngleMethod { quadrature, large_delta, small_delta, large_n };

struct MixingAngleQuery {
    int n{0};
    double g_sigma{1.0};
    double delta{1.0};
    AngleMethod method{AngleMethod::quadrature};
};

// Integral of E_+ / g over the whole tau axis (truncated at |tau| = delta + 7).
// Cached per (n, delta); safe to call concurrently.
double unit_mixing_integral(int n, double delta);

// phi_n = 2 g sigma * unit_mixing_integral(n, delta)
double mixing_angle(int n, double g_sigma, double delta);

// 2((3 + 2n)^2 + 1) / (3 + 2n)^2
double gamma_coefficient(int n);

// Closed-form estimate. Throws OutOfDomainError outside the validity window of
// the requested method (see is_asymptote_valid).
double angle_asymptotic(const MixingAngleQuery& query);
bool is_asymptote_valid(const MixingAngleQuery& query);

// Validity windows.
inline constexpr double kLargeDeltaMin = 2.0;
inline constexpr double kSmallDeltaMax = 0.5;
inline constexpr int kLargeNMin = 20;

struct GSigmaSolution {
    double g_sigma{0.0};
    int multiplicity{0};  // k in target + 2 pi k
    double angle{0.0};    // the angle actually produced, target + 2 pi k
};

// Smallest g_sigma >= min_g_sigma producing target + 2 pi k (k >= 0).
GSigmaSolution solve_gsigma_for_angle(double target, int n, double delta, double min_g_sigma);

std::string method_name(AngleMethod method);
AngleMethod parse_angle_method(const std::string& name);

struct AngleTableRow {
    int n{0};
    double delta{0.0};
    double g_sigma{0.0};
    double phi_quadrature{0.0};
    AngleMethod method{AngleMethod::large_delta};
    double phi_asymptotic{0.0};  // NaN when outside the validity window
    double relative_difference{0.0};
};

AngleTableRow angle_table_row(int n, double g_sigma, double delta, AngleMethod method);

}  // namespace tavis
