#pragma once

// Robot model documents (JSON, schema "wbteleop.robot/1").
//
// {
//   "schema": "wbteleop.robot/1",
//   "name": "aerial_manipulator",
//   "gravity": [0, 0, -9.81],
//   "base":  { "mass": 80, "com": [0,0,0], "inertia": [[30,0,0],[0,30,0],[0,0,30]] },
//   "links": [ { "name": "link1", "parent": "base",
//                "joint": { "type": "revolute", "axis": [0,1,0],
//                           "origin": { "xyz": [0,0,-0.75], "rpy": [0,0,0] } },
//                "mass": 4, "com": [0,0,-0.3], "inertia": [[...],[...],[...]] }, ... ],
//   "frames": [ { "name": "end_effector", "link": "link3", "xyz": [...], "rpy": [...] } ],
//   "end_effector": "end_effector",
//   "camera": "camera",
//   "home": [0.7, -1.4, 0.7]
// }
//
// Lengths in metres, masses in kg, inertias in kg m^2 about the link centre of
// mass, angles in radians (rpy = fixed-axis roll, pitch, yaw). The base frame
// is implicit and always called "base".

#include <filesystem>
#include "json.hpp"

#include "wbt/robot.hpp"

namespace wbt {

inline constexpr const char* kRobotSchema = "wbteleop.robot/1";

RobotModel robot_model_from_json(const nlohmann::json& doc);
nlohmann::json robot_model_to_json(const RobotModel& model);
/// Throws ConfigError with the path on I/O or schema errors.
RobotModel load_robot_model(const std::filesystem::path& path);

Rotation rpy_to_rotation(const Vec3& rpy);

}  // namespace wbt
