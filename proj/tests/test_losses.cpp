// Copyright 2026 The Sketchanim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support.hpp"

#include <sketchanim/error.hpp>
#include <sketchanim/losses.hpp>
#include <sketchanim/oracle.hpp>

#include <doctest.h>

using namespace sketchanim;
using namespace testsupport;

namespace {

CubicBezier segment(Point2 a, Point2 b) {
    return CubicBezier{{a, lerp(a, b, 1.0 / 3.0), lerp(a, b, 2.0 / 3.0), b}};
}

SketchFrame one_stroke(const CubicBezier& c) {
    SketchFrame f;
    f.strokes.push_back(c);
    return f;
}

SketchFrame rigid(const SketchFrame& f, double th, Point2 shift, double scale = 1.0) {
    SketchFrame g = f;
    for (std::size_t j = 0; j < g.point_count(); ++j) {
        const Point2 p = f.point(j);
        g.point(j) = scale * Point2{std::cos(th) * p.x - std::sin(th) * p.y, std::sin(th) * p.x + std::cos(th) * p.y}
                     + shift;
    }
    return g;
}

/// Finite-difference gradient of `f` w.r.t. every point of frames [first, n).
std::vector<double> numeric_frame_grad(const SketchVideo& v,
                                       std::size_t first,
                                       const std::function<double(const SketchVideo&)>& f,
                                       double h = 1e-5) {
    std::vector<double> out;
    for (std::size_t i = 0; i < v.frame_count(); ++i) {
        for (std::size_t j = 0; j < v.point_count(); ++j) {
            for (int axis = 0; axis < 2; ++axis) {
                if (i < first) {
                    out.push_back(0.0);
                    continue;
                }
                SketchVideo w = v;
                out.push_back(central_difference(
                    [&](double x) {
                        coord(w.frames[i].point(j), axis) = x;
                        return f(w);
                    },
                    coord(w.frames[i].point(j), axis),
                    h));
            }
        }
    }
    return out;
}

} // namespace

TEST_SUITE("losses") {

TEST_CASE("LA loss of a static video is zero") {
    std::mt19937_64 rng(1);
    const SketchFrame f = random_sketch(rng, 3);
    const SketchVideo v{{f, f, f, f}};
    const LaResult r = la_loss(v, nullptr, LaConfig{});
    CHECK(r.value == 0.0);
    CHECK(r.length_sum == 0.0);
    CHECK(r.area_sum == 0.0);
    const std::vector<GlobalTransform> ms(3);
    const LocalOffsets off(3, std::vector<Point2>(f.point_count()));
    const MotionPath path{ms, &off};
    CHECK(la_loss(v, &path, LaConfig{}).value == 0.0);
}

TEST_CASE("LA loss of a stretched stroke") {
    const SketchVideo v{{one_stroke(segment({0, 0}, {3, 0})), one_stroke(segment({0, 0}, {4, 0}))}};
    const LaResult r = la_loss(v, nullptr, LaConfig{0.1, 0.0});
    CHECK(r.value == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(r.length_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("LA loss of a translated stroke") {
    const SketchVideo v{{one_stroke(segment({0, 0}, {2, 0})), one_stroke(segment({0, 1}, {2, 1}))}};
    const LaConfig cfg{0.1, 1e-5};
    const LaResult r = la_loss(v, nullptr, cfg);
    CHECK(r.length_sum == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(r.length_sum) <= 1e-12);
    CHECK(r.area_sum == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.value == doctest::Approx(2e-5).epsilon(1e-9));

    GlobalTransform up;
    up.translate = {0, 1};
    const std::vector<GlobalTransform> ms{up};
    const LocalOffsets off(1, std::vector<Point2>(4));
    const MotionPath path{ms, &off};
    const LaResult p = la_loss(v, &path, cfg);
    CHECK(p.value == doctest::Approx(2e-5).epsilon(1e-9));
}

TEST_CASE("length anchors") {
    // Lengths 3, 4, 4: initial anchor sums 1 + 1, previous anchor sums 1 + 0.
    const SketchVideo v{{one_stroke(segment({0, 0}, {3, 0})),
                         one_stroke(segment({0, 0}, {4, 0})),
                         one_stroke(segment({5, 5}, {5, 9}))}};
    CHECK(la_loss(v, nullptr, LaConfig{1.0, 0.0, LengthAnchor::InitialFrame}).length_sum
          == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(la_loss(v, nullptr, LaConfig{1.0, 0.0, LengthAnchor::PreviousFrame}).length_sum
          == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("LA length term ignores rigid motion") {
    std::mt19937_64 rng(2);
    const SketchFrame f = random_sketch(rng, 4);
    SketchVideo v{{f}};
    for (int i = 1; i < 5; ++i) {
        v.frames.push_back(rigid(f, 0.3 * i, Point2{4.0 * i, -2.0 * i}));
    }
    CHECK(la_loss(v, nullptr, LaConfig{}).length_sum < 1e-9);
}

TEST_CASE("LA gradient matches finite differences without a motion path") {
    std::mt19937_64 rng(3);
    const QuadratureSpec q{64, 4};
    for (LengthAnchor anchor : {LengthAnchor::InitialFrame, LengthAnchor::PreviousFrame}) {
        for (int trial = 0; trial < 4; ++trial) {
            const SketchFrame f = random_sketch(rng, 2);
            const SketchVideo v = random_video(rng, f, 4, 6.0);
            const LaConfig cfg{0.1, 1e-3, anchor};
            const LaResult r = la_loss(v, nullptr, cfg, q);
            const auto numeric =
                numeric_frame_grad(v, 0, [&](const SketchVideo& w) { return la_loss(w, nullptr, cfg, q).value; });
            CHECK(relative_error(flatten(r.grad.frames), numeric) < 1e-5);
        }
    }
}

TEST_CASE("LA gradient matches finite differences along a motion path") {
    std::mt19937_64 rng(4);
    const QuadratureSpec q{64, 4};
    for (int trial = 0; trial < 4; ++trial) {
        const SketchFrame f = random_sketch(rng, 2);
        const std::size_t n = 4;
        const SketchVideo v = random_video(rng, f, n, 6.0);
        std::vector<GlobalTransform> ms(n - 1);
        for (GlobalTransform& m : ms) {
            m.scale_x = uniform(rng, 0.8, 1.2);
            m.scale_y = uniform(rng, 0.8, 1.2);
            m.shear = uniform(rng, -0.2, 0.2);
            m.rotation = uniform(rng, -0.3, 0.3);
            m.translate = random_point(rng, -4, 4);
        }
        LocalOffsets off(n - 1, std::vector<Point2>(f.point_count()));
        for (auto& row : off) {
            for (Point2& p : row) {
                p = random_point(rng, -3, 3);
            }
        }
        const LaConfig cfg{0.1, 1e-3};
        const MotionPath path{ms, &off};
        const LaResult r = la_loss(v, &path, cfg, q);

        std::vector<double> analytic = flatten(r.grad.frames);
        std::vector<double> numeric =
            numeric_frame_grad(v, 0, [&](const SketchVideo& w) { return la_loss(w, &path, cfg, q).value; });
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (int k = 0; k < 6; ++k) {
                analytic.push_back(r.grad.transforms[i][k]);
                auto d = ms;
                double* fields[6] = {&d[i].scale_x, &d[i].scale_y, &d[i].shear, &d[i].rotation, &d[i].translate.x,
                                     &d[i].translate.y};
                const double x0 = *fields[k];
                numeric.push_back(central_difference(
                    [&](double x) {
                        *fields[k] = x;
                        const MotionPath pd{d, &off};
                        return la_loss(v, &pd, cfg, q).value;
                    },
                    x0,
                    1e-7));
            }
            for (std::size_t j = 0; j < f.point_count(); ++j) {
                for (int axis = 0; axis < 2; ++axis) {
                    analytic.push_back(axis == 0 ? r.grad.offsets[i][j].x : r.grad.offsets[i][j].y);
                    auto d = off;
                    numeric.push_back(central_difference(
                        [&](double x) {
                            coord(d[i][j], axis) = x;
                            const MotionPath pd{ms, &d};
                            return la_loss(v, &pd, cfg, q).value;
                        },
                        coord(off[i][j], axis),
                        1e-5));
                }
            }
        }
        CHECK(relative_error(analytic, numeric) < 1e-5);
    }
}

TEST_CASE("LA shape errors") {
    std::mt19937_64 rng(5);
    const SketchFrame f = random_sketch(rng, 2);
    const SketchVideo v{{f, f, f}};
    const std::vector<GlobalTransform> ms(1);
    const LocalOffsets off(1, std::vector<Point2>(f.point_count()));
    const MotionPath path{ms, &off};
    CHECK_THROWS_AS(la_loss(v, &path, LaConfig{}), Error);
    CHECK_THROWS_AS(la_loss(v, nullptr, LaConfig{-1.0, 0.0}), Error);
}

TEST_CASE("ARAP of the scaled right triangle") {
    const std::vector<Point2> rest{{0, 0}, {1, 0}, {0, 1}};
    const std::vector<Point2> big{{0, 0}, {2, 0}, {0, 2}};
    const TriangleMesh mesh = delaunay_triangulate(rest);
    const double rot = arap_frame_energy(mesh, rest, big, FitMode::RotationOnly);
    CHECK(std::abs(rot - (2.0 + 2.0 * std::sqrt(2.0))) <= 1e-9);
    CHECK(std::abs(arap_frame_energy(mesh, rest, big, FitMode::RotationThenScale)) <= 1e-9);
}

TEST_CASE("ARAP is zero for a static video and for rigid motion") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const SketchFrame f = random_sketch(rng, 1 + trial % 5);
        const TriangleMesh mesh = delaunay_triangulate(f.points());
        SketchVideo v{{f, f}};
        for (FitMode mode : {FitMode::RotationOnly, FitMode::RotationThenScale}) {
            CHECK(arap_loss(mesh, f, v, ArapConfig{0.1, mode}).energy == 0.0);
        }
        for (int i = 0; i < 4; ++i) {
            v.frames.push_back(rigid(f, uniform(rng, -3, 3), random_point(rng, -40, 40)));
        }
        for (FitMode mode : {FitMode::RotationOnly, FitMode::RotationThenScale}) {
            CHECK(std::abs(arap_loss(mesh, f, v, ArapConfig{0.1, mode}).energy) <= 1e-9);
        }
    }
}

TEST_CASE("ARAP with scale fitting ignores uniform scaling") {
    std::mt19937_64 rng(7);
    const SketchFrame f = random_sketch(rng, 3);
    const TriangleMesh mesh = delaunay_triangulate(f.points());
    const SketchVideo v{{f, rigid(f, 0.4, {3, 1}, 1.7), rigid(f, -1.0, {0, 9}, 0.6)}};
    CHECK(std::abs(arap_loss(mesh, f, v, ArapConfig{0.1, FitMode::RotationThenScale}).energy) <= 1e-9);
    CHECK(arap_loss(mesh, f, v, ArapConfig{0.1, FitMode::RotationOnly}).energy > 1.0);
}

TEST_CASE("ARAP is invariant under a common rigid transform of all frames") {
    std::mt19937_64 rng(8);
    const SketchFrame f = random_sketch(rng, 3);
    const SketchVideo v = random_video(rng, f, 4, 8.0);
    const TriangleMesh mesh = delaunay_triangulate(f.points());
    SketchVideo moved;
    for (const SketchFrame& fr : v.frames) {
        moved.frames.push_back(rigid(fr, 0.9, {20, -5}));
    }
    for (FitMode mode : {FitMode::RotationOnly, FitMode::RotationThenScale}) {
        const double a = arap_loss(mesh, f, v, ArapConfig{0.1, mode}).energy;
        const double b = arap_loss(mesh, moved.frames[0], moved, ArapConfig{0.1, mode}).energy;
        CHECK(b == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("ARAP gradient matches finite differences") {
    std::mt19937_64 rng(9);
    for (FitMode mode : {FitMode::RotationOnly, FitMode::RotationThenScale}) {
        for (int trial = 0; trial < 5; ++trial) {
            const SketchFrame f = random_sketch(rng, 3);
            SketchVideo v = random_video(rng, f, 3, 10.0);
            v.frames[2] = rigid(v.frames[2], 0.5, {0, 0});
            const TriangleMesh mesh = delaunay_triangulate(f.points());
            const ArapConfig cfg{0.1, mode};
            const ArapResult r = arap_loss(mesh, f, v, cfg);
            REQUIRE(r.per_frame.size() == 3);
            CHECK(r.per_frame[0] == 0.0);
            CHECK(r.energy == doctest::Approx(r.per_frame[1] + r.per_frame[2]));
            const auto numeric =
                numeric_frame_grad(v, 1, [&](const SketchVideo& w) { return arap_loss(mesh, f, w, cfg).energy; });
            CHECK(relative_error(flatten(r.grad), numeric) < 1e-6);
        }
    }
}

TEST_CASE("ARAP errors") {
    std::mt19937_64 rng(10);
    const SketchFrame f = random_sketch(rng, 2);
    const SketchVideo v{{f, f}};
    CHECK_THROWS_AS(arap_loss(TriangleMesh{}, f, v, ArapConfig{}), Error);
    const TriangleMesh mesh = delaunay_triangulate(f.points());
    const SketchFrame g = random_sketch(rng, 3);
    CHECK_THROWS_AS(arap_loss(mesh, f, SketchVideo{{g, g}}, ArapConfig{}), Error);
}

TEST_CASE("target oracle examples") {
    std::mt19937_64 rng(11);
    const SketchFrame f = random_sketch(rng, 2);
    const SketchVideo targets = random_video(rng, f, 3, 5.0);
    const auto oracle = make_target_oracle(targets, 1.0);
    const GuidanceResult same = oracle->evaluate(targets);
    CHECK(same.loss == 0.0);
    for (double g : flatten(same.gradient)) {
        CHECK(g == 0.0);
    }

    SketchVideo off = targets;
    off.frames[1].point(2).x += 1.0;
    const double coords = 2.0 * 3.0 * static_cast<double>(f.point_count());
    const GuidanceResult r = oracle->evaluate(off);
    CHECK(r.loss == doctest::Approx(1.0 / coords).epsilon(1e-12));
    CHECK(r.gradient[1][2].x == doctest::Approx(2.0 / coords).epsilon(1e-12));
    CHECK(r.gradient[1][2].y == 0.0);

    const GuidanceResult doubled = make_target_oracle(targets, 2.0)->evaluate(off);
    CHECK(doubled.loss == 2.0 * r.loss);
    CHECK(doubled.gradient[1][2].x == 2.0 * r.gradient[1][2].x);

    CHECK_THROWS_AS(oracle->evaluate(SketchVideo{{f, f}}), Error);
}

TEST_CASE("rigid oracle examples") {
    std::mt19937_64 rng(12);
    const SketchFrame f = random_sketch(rng, 3);
    const SketchVideo still{{f, f, f, f}};
    CHECK(make_static_oracle(1.0)->evaluate(still).loss == 0.0);
    CHECK(make_rigid_motion_oracle(0.0, {}, 1.0)->evaluate(still).loss == 0.0);

    const RigidMotionOracle spin(std::numbers::pi / 12, {}, 1.0);
    const SketchVideo targets = spin.targets_for(f, 24);
    REQUIRE(targets.frame_count() == 24);
    const Point2 c = frame_centroid(f);
    const double th = 23.0 * std::numbers::pi / 12.0;
    for (std::size_t j = 0; j < f.point_count(); ++j) {
        const Point2 d = f.point(j) - c;
        const Point2 want = c + Point2{std::cos(th) * d.x - std::sin(th) * d.y, std::sin(th) * d.x + std::cos(th) * d.y};
        CHECK(targets.frames[23].point(j).x == doctest::Approx(want.x).epsilon(1e-12));
        CHECK(targets.frames[23].point(j).y == doctest::Approx(want.y).epsilon(1e-12));
    }

    // Targets move with translation velocity as well.
    const RigidMotionOracle drift(0.0, {2, -1}, 1.0);
    const SketchVideo t2 = drift.targets_for(f, 5);
    CHECK(t2.frames[4].point(0).x == doctest::Approx(f.point(0).x + 8).epsilon(1e-14));
    CHECK(t2.frames[4].point(0).y == doctest::Approx(f.point(0).y - 4).epsilon(1e-14));
}

TEST_CASE("oracle gradients match finite differences") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const SketchFrame f = random_sketch(rng, 2);
        const SketchVideo v = random_video(rng, f, 4, 10.0);
        const RigidMotionOracle rigid_oracle(uniform(rng, -0.3, 0.3), random_point(rng, -2, 2), 1.5);
        const GuidanceResult r = rigid_oracle.evaluate(v);
        const auto numeric = numeric_frame_grad(v, 0, [&](const SketchVideo& w) { return rigid_oracle.evaluate(w).loss; });
        CHECK(relative_error(flatten(r.gradient), numeric) < 1e-6);

        const auto target = make_target_oracle(random_video(rng, f, 4, 10.0), 0.7);
        const GuidanceResult t = target->evaluate(v);
        const auto tnum = numeric_frame_grad(v, 0, [&](const SketchVideo& w) { return target->evaluate(w).loss; });
        CHECK(relative_error(flatten(t.gradient), tnum) < 1e-6);
    }
}

TEST_CASE("oracle selectors and registry") {
    const OracleSpec spec = OracleSpec::parse("rigid:angle=0.1,tx=2");
    CHECK(spec.name == "rigid");
    CHECK(spec.args.at("angle") == "0.1");
    CHECK(spec.args.at("tx") == "2");
    CHECK(OracleSpec::parse(spec.to_string()).args == spec.args);
    CHECK(OracleSpec::parse("static").args.empty());
    CHECK_THROWS_AS(OracleSpec::parse(""), Error);
    CHECK_THROWS_AS(OracleSpec::parse("rigid:angle"), Error);

    const OracleRegistry& reg = OracleRegistry::builtin();
    CHECK(reg.contains("rigid"));
    CHECK(reg.contains("static"));
    CHECK(reg.contains("target"));
    CHECK(reg.create(OracleSpec::parse("rigid:angle=0.2"))->name().find("rigid") != std::string::npos);
    CHECK_THROWS_AS(reg.create(OracleSpec::parse("nope")), Error);
    CHECK_THROWS_AS(reg.create(OracleSpec::parse("rigid:speed=1")), Error);
    CHECK_THROWS_AS(reg.create(OracleSpec::parse("rigid:angle=abc")), Error);
    CHECK_THROWS_AS(reg.create(OracleSpec::parse("static:weight=-1")), Error);
    const auto oracle = reg.create(OracleSpec::parse("static"));
    CHECK_FALSE(oracle->noise_level().has_value());
    CHECK_FALSE(oracle->prompt().has_value());
}

TEST_CASE("total loss combines the terms") {
    std::mt19937_64 rng(14);
    const QuadratureSpec q{64, 4};
    const SketchFrame f = random_sketch(rng, 3);
    const SketchVideo v = random_video(rng, f, 4, 6.0);
    const TriangleMesh mesh = delaunay_triangulate(f.points());
    const LaConfig la{0.1, 1e-5};
    const ArapConfig arap{0.1, FitMode::RotationThenScale};
    const auto oracle = make_rigid_motion_oracle(0.1, {1, 0}, 1.0);

    const TotalLossResult t = total_loss(v, nullptr, la, arap, *oracle, mesh, f, q);
    const LaResult lr = la_loss(v, nullptr, la, q);
    const ArapResult ar = arap_loss(mesh, f, v, arap);
    const GuidanceResult gr = oracle->evaluate(v);
    CHECK(t.breakdown.length_term == lr.length_sum);
    CHECK(t.breakdown.area_term == lr.area_sum);
    CHECK(t.breakdown.arap_term == ar.energy);
    CHECK(t.breakdown.guidance_term == gr.loss);
    const double want = gr.loss + 0.1 * lr.length_sum + 1e-5 * lr.area_sum + 0.1 * ar.energy;
    CHECK(std::abs(t.breakdown.total - want) <= 1e-12 * want);
    CHECK(weighted_total(t.breakdown, la, arap) == t.breakdown.total);
    for (std::size_t i = 0; i < v.frame_count(); ++i) {
        for (std::size_t j = 0; j < v.point_count(); ++j) {
            const Point2 sum = lr.grad.frames[i][j] + arap.lambda_arap * ar.grad[i][j] + gr.gradient[i][j];
            CHECK(t.grad.frames[i][j] == sum);
        }
    }

    // Zeroing the ARAP weight leaves exactly LA plus guidance.
    const TotalLossResult no_arap = total_loss(v, nullptr, la, ArapConfig{0.0}, *oracle, mesh, f, q);
    CHECK(no_arap.breakdown.total == doctest::Approx(gr.loss + lr.value).epsilon(1e-14));

    // All weights zero with a zero-loss oracle.
    const SketchVideo still{{f, f, f}};
    const TotalLossResult zero = total_loss(still, nullptr, LaConfig{0, 0}, ArapConfig{0}, *make_static_oracle(1.0), mesh, f, q);
    CHECK(zero.breakdown.total == 0.0);
    for (double g : flatten(zero.grad.frames)) {
        CHECK(g == 0.0);
    }
}

TEST_CASE("total loss gradient matches finite differences") {
    std::mt19937_64 rng(15);
    const QuadratureSpec q{64, 4};
    for (int trial = 0; trial < 3; ++trial) {
        const SketchFrame f = random_sketch(rng, 2);
        const SketchVideo v = random_video(rng, f, 3, 6.0);
        const TriangleMesh mesh = delaunay_triangulate(f.points());
        const LaConfig la{0.1, 1e-3};
        const ArapConfig arap{0.1};
        const auto oracle = make_rigid_motion_oracle(0.2, {0, 1}, 1.0);
        const TotalLossResult t = total_loss(v, nullptr, la, arap, *oracle, mesh, f, q);
        // The rest frame is held fixed while frame 0 moves, matching how the
        // training loop uses the input sketch as both.
        const auto numeric = numeric_frame_grad(
            v, 0, [&](const SketchVideo& w) { return total_loss(w, nullptr, la, arap, *oracle, mesh, f, q).breakdown.total; });
        CHECK(relative_error(flatten(t.grad.frames), numeric) < 1e-5);
    }
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(LaConfig{}.validate());
    CHECK_THROWS_AS((LaConfig{0.1, -1.0}.validate()), Error);
    CHECK_THROWS_AS((LaConfig{std::nan(""), 0.0}.validate()), Error);
    CHECK_THROWS_AS((ArapConfig{-0.1}.validate()), Error);
    LaConfig defaults;
    CHECK(defaults.lambda_l == 0.1);
    CHECK(defaults.lambda_a == 1e-5);
    CHECK(defaults.length_anchor == LengthAnchor::InitialFrame);
    ArapConfig arap;
    CHECK(arap.lambda_arap == 0.1);
    CHECK(arap.fit_mode == FitMode::RotationThenScale);
}

} // TEST_SUITE
