#pragma once

#include <string>
#include <vector>

#include "tradestudy/catalog.hpp"

namespace tradestudy {

/// Mass of one boom of length `length_m` with the given linear density, in kg.
/// Throws ValidationError on non-positive input.
double boom_mass(double length_m, double density_g_per_m);

/// `fraction` of the mass left after booms and instruments, in kg.
/// Throws InfeasibleError when nothing remains.
double body_sensor_budget(double overall_kg, double total_boom_kg, double instruments_kg,
                          double fraction);

/// Bending moment at the boom root with the boom held horizontal:
///   (m_sensor + m_gripper + m_boom / 2) * g * L
/// The boom's own weight acts at its midpoint. Throws ValidationError on
/// negative masses or gravity, or non-positive length.
double shoulder_moment(double sensor_kg, double gripper_kg, double boom_kg, double gravity,
                       double length_m);

/// Largest distal mass keeping shoulder_moment * (1 + margin) <= critical moment,
/// floored at zero.
double max_distal_sensor_mass(double critical_moment_nm, double margin, double gripper_kg,
                              double boom_kg, double gravity, double length_m);

struct PulloffCheck {
  bool feasible = false;
  double capacity_n = 0.0;
  double load_n = 0.0;
  double margin_n = 0.0;  // capacity - load; negative when infeasible
};

PulloffCheck pulloff_capacity_check(int gripper_count, double pulloff_per_gripper_n,
                                    double total_mass_kg, double gravity);

struct BudgetReport {
  double boom_mass_kg = 0.0;
  double total_boom_mass_kg = 0.0;
  double body_sensor_budget_kg = 0.0;
  double distal_sensor_budget_kg = 0.0;
  double distal_sensor_mass_kg = 0.0;
  double body_sensor_mass_kg = 0.0;
  double shoulder_moment_nm = 0.0;         // at distal_sensor_mass_kg
  double margined_moment_limit_nm = 0.0;   // critical / (1 + margin)
  double pulloff_capacity_n = 0.0;
  double weight_on_grippers_n = 0.0;
  bool feasible = false;
  std::vector<std::string> infeasibility;
};

/// Composes the operations above for a mission and proposed sensor masses.
/// Negative budgets floor to zero and mark the report infeasible instead of
/// throwing.
BudgetReport budget_report(const MissionConfig& mission, double distal_sensor_kg,
                           double body_sensor_kg);

/// Convenience wrappers reading the mission's constants.
double mission_boom_mass(const MissionConfig& mission);
double mission_body_budget(const MissionConfig& mission);
double mission_distal_budget(const MissionConfig& mission);

}  // namespace tradestudy
