#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sensguard {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Bounds {
    double x0 = 0.0;
    double y0 = 0.0;
    double width = 100.0;
    double height = 20.0;

    bool contains(Vec2 p) const
    {
        return p.x >= x0 && p.x <= x0 + width && p.y >= y0 && p.y <= y0 + height;
    }
};

struct TrajectoryPoint {
    double t = 0.0;
    Vec2 position;
    double speed = 0.0;   // m/s
    double heading = 0.0; // rad
};

struct SensingGeometry {
    double d = 0.0;     // m
    double phi = 0.0;   // rad
    double theta = 0.0; // rad
    double v_r = 0.0;   // m/s, positive when receding
};

struct TrajectoryOptions {
    std::optional<Vec2> start;             // default: centre of the bounds
    std::optional<double> initial_heading; // default: uniform draw
    double speed_jitter = 0.0;             // std of per-step speed, m/s
};

std::vector<TrajectoryPoint> gen_trajectory(double duration, double step, double speed_mean,
                                            double heading_sigma, const Bounds& bounds, std::uint64_t seed,
                                            const TrajectoryOptions& options = {});

SensingGeometry geometry_at(Vec2 initiator, const TrajectoryPoint& point);

double round_trip_delay(double d);
double doppler_shift(double v_r, double fc_hz);

double wrap_angle(double a);

}
