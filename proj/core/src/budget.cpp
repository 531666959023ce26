#include "tradestudy/budget.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "tradestudy/units.hpp"

namespace tradestudy {

namespace {

void require_non_negative(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0) throw ValidationError("budget", field, "must be >= 0");
}

void require_positive(double v, const char* field) {
  if (!std::isfinite(v) || v <= 0.0) throw ValidationError("budget", field, "must be > 0");
}

}  // namespace

double boom_mass(double length_m, double density_g_per_m) {
  require_positive(length_m, "boom_length_m");
  require_positive(density_g_per_m, "boom_linear_density_g_per_m");
  return grams_to_kg(length_m * density_g_per_m);
}

double body_sensor_budget(double overall_kg, double total_boom_kg, double instruments_kg,
                          double fraction) {
  require_non_negative(total_boom_kg, "total_boom_kg");
  require_non_negative(instruments_kg, "instrument_mass_kg");
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ValidationError("budget", "body_sensor_fraction", "must be in (0, 1]");
  const double remainder = overall_kg - total_boom_kg - instruments_kg;
  if (!(remainder > 0.0))
    throw InfeasibleError(fmt::format(
        "no mass left for body sensors: overall {} kg - booms {} kg - instruments {} kg = {} kg",
        overall_kg, total_boom_kg, instruments_kg, remainder));
  return fraction * remainder;
}

double shoulder_moment(double sensor_kg, double gripper_kg, double boom_kg, double gravity,
                       double length_m) {
  require_non_negative(sensor_kg, "sensor_kg");
  require_non_negative(gripper_kg, "gripper_kg");
  require_non_negative(boom_kg, "boom_kg");
  require_non_negative(gravity, "gravity");
  require_positive(length_m, "boom_length_m");
  return (sensor_kg + gripper_kg + 0.5 * boom_kg) * gravity * length_m;
}

double max_distal_sensor_mass(double critical_moment_nm, double margin, double gripper_kg,
                              double boom_kg, double gravity, double length_m) {
  require_positive(critical_moment_nm, "critical_buckling_moment_nm");
  if (!(margin >= 0.0 && margin < 1.0))
    throw ValidationError("budget", "buckling_margin", "must be in [0, 1)");
  require_non_negative(gripper_kg, "gripper_kg");
  require_non_negative(boom_kg, "boom_kg");
  require_positive(gravity, "gravity");
  require_positive(length_m, "boom_length_m");
  // The margin divides the critical moment. Multiplying by (1 - margin)
  // instead gives 0.649 kg for the reference mission rather than 0.72 kg.
  const double allowed_moment = critical_moment_nm / (1.0 + margin);
  const double mass = allowed_moment / (gravity * length_m) - gripper_kg - 0.5 * boom_kg;
  return std::max(0.0, mass);
}

PulloffCheck pulloff_capacity_check(int gripper_count, double pulloff_per_gripper_n,
                                    double total_mass_kg, double gravity) {
  if (gripper_count < 0) throw ValidationError("budget", "gripper_count", "must be >= 0");
  require_non_negative(pulloff_per_gripper_n, "gripper_pulloff_n");
  require_non_negative(total_mass_kg, "total_mass_kg");
  require_non_negative(gravity, "gravity");
  PulloffCheck c;
  c.capacity_n = gripper_count * pulloff_per_gripper_n;
  c.load_n = total_mass_kg * gravity;
  c.margin_n = c.capacity_n - c.load_n;
  c.feasible = c.capacity_n >= c.load_n;
  return c;
}

double mission_boom_mass(const MissionConfig& m) {
  return boom_mass(m.boom_length_m, m.boom_linear_density_g_per_m);
}

double mission_body_budget(const MissionConfig& m) {
  return body_sensor_budget(m.overall_mass_budget_kg, mission_boom_mass(m) * m.boom_count,
                            m.instrument_mass_kg, m.body_sensor_fraction);
}

double mission_distal_budget(const MissionConfig& m) {
  return max_distal_sensor_mass(m.critical_buckling_moment_nm, m.buckling_margin,
                                m.gripper_mass_kg, mission_boom_mass(m), m.gravity,
                                m.boom_length_m);
}

BudgetReport budget_report(const MissionConfig& mission, double distal_sensor_kg,
                           double body_sensor_kg) {
  validate(mission);
  require_non_negative(distal_sensor_kg, "distal_sensor_kg");
  require_non_negative(body_sensor_kg, "body_sensor_kg");

  BudgetReport r;
  r.boom_mass_kg = mission_boom_mass(mission);
  r.total_boom_mass_kg = r.boom_mass_kg * mission.boom_count;
  r.distal_sensor_mass_kg = distal_sensor_kg;
  r.body_sensor_mass_kg = body_sensor_kg;

  const double remainder =
      mission.overall_mass_budget_kg - r.total_boom_mass_kg - mission.instrument_mass_kg;
  if (remainder > 0.0) {
    r.body_sensor_budget_kg = mission.body_sensor_fraction * remainder;
  } else {
    r.infeasibility.push_back(
        fmt::format("booms and instruments exceed the overall budget by {:.4g} kg", -remainder));
  }

  r.distal_sensor_budget_kg = mission_distal_budget(mission);
  if (r.distal_sensor_budget_kg <= 0.0)
    r.infeasibility.push_back("gripper and boom alone exceed the margined buckling moment");

  r.shoulder_moment_nm = shoulder_moment(distal_sensor_kg, mission.gripper_mass_kg,
                                         r.boom_mass_kg, mission.gravity, mission.boom_length_m);
  r.margined_moment_limit_nm = mission.critical_buckling_moment_nm / (1.0 + mission.buckling_margin);

  const auto pulloff = pulloff_capacity_check(mission.boom_count, mission.gripper_pulloff_n,
                                              mission.overall_mass_budget_kg, mission.gravity);
  r.pulloff_capacity_n = pulloff.capacity_n;
  r.weight_on_grippers_n = pulloff.load_n;
  if (!pulloff.feasible)
    r.infeasibility.push_back(fmt::format("weight {:.4g} N exceeds gripper pulloff capacity {:.4g} N",
                                          pulloff.load_n, pulloff.capacity_n));
  if (distal_sensor_kg > r.distal_sensor_budget_kg)
    r.infeasibility.push_back(fmt::format("distal sensor mass {:.4g} kg exceeds distal budget {:.4g} kg",
                                          distal_sensor_kg, r.distal_sensor_budget_kg));
  if (body_sensor_kg > r.body_sensor_budget_kg)
    r.infeasibility.push_back(fmt::format("body sensor mass {:.4g} kg exceeds body budget {:.4g} kg",
                                          body_sensor_kg, r.body_sensor_budget_kg));
  r.feasible = r.infeasibility.empty();
  return r;
}

}  // namespace tradestudy
