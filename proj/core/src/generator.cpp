#include "esec/generator.hpp"

#include "esec/parallel.hpp"
#include "esec/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

namespace fs = std::filesystem;
using nlohmann::json;

namespace esec {

const std::vector<std::string>& action_names() {
    static const std::vector<std::string> names = {
        "hide", "cut", "chop", "take_down", "put_on_top",
        "shake", "lay", "push", "uncover", "stir",
    };
    return names;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double smoothstep(double u) {
    u = std::clamp(u, 0.0, 1.0);
    return u * u * (3.0 - 2.0 * u);
}

struct Track {
    double t0 = 0.0, t1 = 0.0;
    Vec3 delta;
};

struct DimTrack {
    double t0 = 0.0, t1 = 0.0;
    Vec3 from, to;
};

struct GenObject {
    std::string id;
    Vec3 dims;
    Vec3 center0;
    bool is_hand = false;
    bool is_ground = false;
    bool anchor_bottom = false; // keep the bottom face fixed while dims morph
    std::vector<Track> tracks;
    std::vector<DimTrack> dim_tracks;
    double intact_false_from = kInf; // window time
    double visible_false_from = kInf;
    double visible_from = -kInf; // invisible before this window time

    Vec3 dims_at(double t) const {
        Vec3 d = dims;
        for (const auto& m : dim_tracks) {
            const double u = smoothstep((t - m.t0) / (m.t1 - m.t0));
            d = m.from + (m.to - m.from) * u;
        }
        return d;
    }

    Vec3 center_at(double t) const {
        Vec3 c = center0;
        for (const auto& tr : tracks) {
            const double u = smoothstep((t - tr.t0) / (tr.t1 - tr.t0));
            c = c + tr.delta * u;
        }
        if (anchor_bottom) {
            const double bottom0 = center0.y + dims.y * 0.5; // image axis: +y is down
            double moved = 0.0;
            for (const auto& tr : tracks) {
                const double u = smoothstep((t - tr.t0) / (tr.t1 - tr.t0));
                moved += tr.delta.y * u;
            }
            c.y = bottom0 + moved - dims_at(t).y * 0.5;
        }
        return c;
    }

    Aabb box_at(double t) const {
        const Vec3 c = center_at(t);
        const Vec3 h = dims_at(t) * 0.5;
        return {{c.x - h.x, c.y - h.y, c.z - h.z}, {c.x + h.x, c.y + h.y, c.z + h.z}};
    }
};

// Visibility switched the first frame a box-gap condition holds.
struct GapTrigger {
    std::string subject;
    std::string ref_a, ref_b;
    bool fire_when_touching = true; // else fires on separation
    double search_from = 0.0;       // window time
    bool make_visible = false;      // else makes the subject invisible
};

struct Script {
    std::vector<GenObject> objects;
    std::vector<GapTrigger> triggers;
    double cursor = 0.0; // window seconds
    double scale = 1.0;  // stretches every duration

    GenObject& obj(const std::string& id) {
        for (auto& o : objects)
            if (o.id == id) return o;
        throw std::logic_error("unknown script object: " + id);
    }

    void add(const std::string& id, Vec3 dims, Vec3 center, bool hand = false, bool ground = false) {
        GenObject o;
        o.id = id;
        o.dims = dims;
        o.center0 = center;
        o.is_hand = hand;
        o.is_ground = ground;
        objects.push_back(std::move(o));
    }

    // Appends a smoothstep move starting `lead` seconds before the cursor
    // (overlapping the previous move keeps held objects continuously in motion).
    void move(std::initializer_list<const char*> ids, Vec3 delta, double dur, double lead = 0.0) {
        const double t0 = cursor - lead * scale;
        const double t1 = t0 + dur * scale;
        for (const char* id : ids) obj(id).tracks.push_back({t0, t1, delta});
        cursor = t1;
    }

    void dwell(double dur) { cursor += dur * scale; }

    void morph(const std::string& id, Vec3 to, double dur) {
        auto& o = obj(id);
        o.dim_tracks.push_back({cursor, cursor + dur * scale, o.dims, to});
        o.anchor_bottom = true;
        cursor += dur * scale;
    }

    void destroy(const std::string& id) { obj(id).intact_false_from = cursor; }

    void hide_when_touching(const std::string& subject, const std::string& a, const std::string& b) {
        triggers.push_back({subject, a, b, true, cursor, false});
    }

    void reveal_when_apart(const std::string& subject, const std::string& a, const std::string& b) {
        obj(subject).visible_from = kInf; // resolved by the trigger pass
        triggers.push_back({subject, a, b, false, cursor, true});
    }
};

// Layout frame: m = main axis through the ground center, s = sideways.
// Boxes are axis-aligned, so the frame is snapped to a quadrant; flush
// contacts stay flush. side0 shifts the whole layout off the diagonal.
struct Frame2 {
    Vec3 m, s;
    double side0 = 0.0;
    // Positions carry the layout's sideways shift; displacements must not.
    Vec3 at(double along, double side, double y) const {
        const double sd = side + side0;
        return {m.x * along + s.x * sd, y, m.z * along + s.z * sd};
    }
    Vec3 delta(double along, double side, double y = 0.0) const {
        return {m.x * along + s.x * side, y, m.z * along + s.z * side};
    }
};

double rest_y(double h) { return -h * 0.5; } // bottom flush with the ground plane y=0

// Box extents specified in layout coordinates (along the main axis / sideways).
Vec3 oriented_dims(const Frame2& fr, double along, double height, double side) {
    return fr.m.x != 0.0 ? Vec3{along, height, side} : Vec3{side, height, along};
}

struct ActionDefaults {
    double dur_mean, dur_sd;
};

ActionDefaults duration_defaults(const std::string& action) {
    // The five benchmark actions use the published human statistics; the
    // rest get ranges matching their scripted phase budgets.
    if (action == "take_down") return {11.7, 2.9};
    if (action == "put_on_top") return {12.0, 2.1};
    if (action == "shake") return {12.5, 2.1};
    if (action == "push") return {12.7, 1.9};
    if (action == "hide") return {13.8, 2.5};
    if (action == "cut") return {15.5, 1.5};
    if (action == "stir") return {16.0, 1.5};
    if (action == "chop") return {11.0, 1.5};
    if (action == "lay") return {11.5, 1.5};
    if (action == "uncover") return {13.5, 1.5};
    return {12.0, 2.0};
}

constexpr double kHandW = 0.07, kHandH = 0.05, kHandD = 0.07;

// Hand descent used by the high-entry actions: staged so the 10 cm ground
// crossing and the grip contact land well apart.
void staged_descent(Script& sc, const Vec3& grip, double entry_gap, double grip_gap) {
    const double drop1 = entry_gap - 0.13;
    const double drop2 = 0.13 - 0.085;
    const double drop3 = 0.085 - grip_gap;
    sc.obj("hand").center0 = grip - Vec3{0, (entry_gap - grip_gap), 0};
    sc.move({"hand"}, {0, drop1, 0}, 1.3);
    sc.move({"hand"}, {0, drop2, 0}, 0.9);
    sc.move({"hand"}, {0, drop3, 0}, 1.0);
}

// Side grips descend next to the object offset out of the contact plane,
// then close the last 2 cm laterally; contact fires at the step's end.
void staged_descent_side(Script& sc, const Vec3& grip, const Vec3& out_dir, double entry_gap,
                         double grip_gap) {
    const Vec3 offset = out_dir * 0.02;
    sc.obj("hand").center0 = grip + offset - Vec3{0, (entry_gap - grip_gap), 0};
    sc.move({"hand"}, {0, entry_gap - 0.13, 0}, 1.3);
    sc.move({"hand"}, {0, 0.13 - 0.085, 0}, 0.9);
    sc.move({"hand"}, {0, 0.085 - grip_gap, 0}, 1.0);
    sc.move({"hand"}, offset * -1.0, 0.7);
}

} // namespace

SceneStream generate_scene(const GenParams& params) {
    const auto& names = action_names();
    if (std::find(names.begin(), names.end(), params.action) == names.end())
        throw std::invalid_argument("unknown action name: " + params.action);
    if (params.distractor_count < 0 || params.distractor_count > 3)
        throw std::invalid_argument("distractor_count must be 0..3");
    if (!(params.fps > 0.0)) throw std::invalid_argument("fps must be positive");

    Rng rng(params.seed ^ 0x5851f42d4c957f2dULL);
    rng.next_u64();

    const ActionDefaults dd = duration_defaults(params.action);
    double dmin = params.duration_min > 0 ? params.duration_min : dd.dur_mean - dd.dur_sd;
    double dmax = params.duration_max > 0 ? params.duration_max : dd.dur_mean + dd.dur_sd;
    if (dmin > dmax) std::swap(dmin, dmax);
    const double duration = rng.uniform(dmin, dmax) * params.speed_scale;

    static const Vec3 kAxes[4] = {{1, 0, 0}, {0, 0, 1}, {-1, 0, 0}, {0, 0, -1}};
    const std::size_t quadrant = static_cast<std::size_t>(rng.below(4));
    Frame2 fr{kAxes[quadrant], kAxes[(quadrant + 1) % 4], rng.uniform(-0.05, 0.05)};
    const double theta = std::atan2(fr.m.z, fr.m.x);

    Script sc;
    sc.add("ground", {1.4, 0.04, 1.4}, {0, 0.02, 0}, false, true);
    sc.add("hand", {kHandW, kHandH, kHandD}, {0, 0, 0}, true, false);

    auto jit = [&](double v, double j) { return v + rng.uniform(-j, j); };

    const std::string& act = params.action;

    // Per-action scripted milestones. Motions are slow by default so
    // windowed distance changes stay below the GC/MA threshold; the few
    // deliberately fast phases are marked. Dwells isolate threshold
    // crossings from each other by more than the relation window.
    if (act == "hide") {
        const double bw = jit(0.055, 0.004), bh = jit(0.045, 0.003);
        const double cw = jit(0.13, 0.006), ch = jit(0.12, 0.006);
        const double rb = jit(0.17, 0.015);
        const double rc = rb + jit(0.30, 0.015);
        sc.add("block", {bw, bh, bw}, fr.at(rb, 0, rest_y(bh)));
        sc.add("cup", {cw, ch, cw}, fr.at(rc, 0, rest_y(ch)));
        const double grip_gap = 0.015;
        const Vec3 grip = fr.at(rc + cw * 0.5 + kHandW * 0.5, 0, -(grip_gap + kHandH * 0.5));
        staged_descent_side(sc, grip, fr.m, 0.28, grip_gap);
        sc.dwell(0.9);
        sc.move({"hand", "cup"}, {0, -0.075, 0}, 1.0); // lift, stays under the null radius
        sc.move({"hand", "cup"}, fr.delta(-(rc - rb), 0), 1.7, 0.25);
        sc.move({"hand", "cup"}, {0, 0.075, 0}, 1.5, 0.25); // descend to enclose
        sc.hide_when_touching("block", "cup", "ground");
        sc.dwell(1.0);
        sc.move({"hand"}, fr.delta(0.14, 0), 1.3); // release
        sc.dwell(0.4);
        sc.move({"hand"}, {0, -0.25, 0}, 1.9); // leave
    } else if (act == "put_on_top") {
        const double bw = jit(0.06, 0.004), bh = 0.05;
        const double pw = jit(0.16, 0.008), ph = jit(0.14, 0.006);
        const double rb = jit(0.18, 0.01);
        const double rp = rb + jit(0.27, 0.01);
        sc.add("block", {bw, bh, bw}, fr.at(rb, 0, rest_y(bh)));
        sc.add("base", {pw, ph, pw}, fr.at(rp, 0, rest_y(ph)));
        const double grip_gap = 0.015;
        const Vec3 grip = fr.at(rb + bw * 0.5 + kHandW * 0.5, 0, -(grip_gap + kHandH * 0.5));
        // Fast straight-in swoop above the base height: reads as GC.
        sc.obj("hand").center0 = grip + fr.delta(0.46 + 0.02, 0, -(0.17 - grip_gap));
        sc.dwell(0.5);
        sc.move({"hand"}, fr.delta(-0.44, 0), 1.2); // swoop in, ~0.55 m/s at peak
        sc.dwell(0.6);
        sc.move({"hand"}, {0, 0.17 - grip_gap, 0}, 1.4); // sink beside the block
        sc.move({"hand"}, fr.delta(-0.04, 0), 0.8); // close the grip
        sc.dwell(0.9);
        sc.move({"hand", "block"}, {0, -0.17, 0}, 2.2); // clear the base height
        sc.move({"hand", "block"}, fr.delta(rp - rb, 0), 1.7, 0.3);
        sc.move({"hand", "block"}, {0, 0.17 - ph, 0}, 1.0, 0.25); // set down on the base
        sc.dwell(0.9);
        sc.move({"hand"}, fr.delta(0.02, 0, -0.10), 0.9); // release up, off the contact plane
        sc.dwell(0.4);
        sc.move({"hand"}, {0, -0.18, 0}, 2.0); // drift away until the recording ends
    } else if (act == "shake") {
        const double bw = jit(0.06, 0.004), bh = 0.05;
        const double rb = jit(0.20, 0.015);
        sc.add("block", {bw, bh, bw}, fr.at(rb, 0, rest_y(bh)));
        const double grip_gap = 0.015;
        const Vec3 grip = fr.at(rb + bw * 0.5 + kHandW * 0.5, 0, -(grip_gap + kHandH * 0.5));
        const Vec3 offset = fr.delta(0.02, 0);
        sc.obj("hand").center0 = grip + offset - Vec3{0, 0.28 - grip_gap, 0};
        sc.move({"hand"}, {0, 0.15, 0}, 1.2);
        sc.move({"hand"}, {0, 0.28 - 0.15 - grip_gap, 0}, 1.2);
        sc.move({"hand"}, offset * -1.0, 0.6);
        sc.dwell(0.9);
        sc.move({"hand"}, fr.delta(0.03, 0), 0.4); // regrip: hover just beside
        sc.dwell(0.9);
        sc.move({"hand"}, fr.delta(-0.03, 0), 0.4);
        sc.dwell(0.9);
        // One high oscillation; overlapping legs keep the pair in motion
        // through the reversals.
        sc.move({"hand", "block"}, {0, -0.18, 0}, 1.6);
        sc.move({"hand", "block"}, {0, 0.14, 0}, 1.3, 0.35);
        sc.move({"hand", "block"}, {0, -0.12, 0}, 1.3, 0.35);
        sc.move({"hand", "block"}, {0, 0.16, 0}, 1.7, 0.35); // settle back down
        sc.dwell(0.9);
        sc.move({"hand"}, fr.delta(0.14, 0), 1.0); // release
        sc.dwell(0.3);
        sc.move({"hand"}, {0, -0.22, 0}, 1.2);
    } else if (act == "stir") {
        const double cw = jit(0.16, 0.006), ch = jit(0.22, 0.008);
        const double sw = 0.035, sh = 0.10; // ladle-like stirrer
        const double rc = jit(0.17, 0.01);
        const double rs = rc + jit(0.26, 0.01);
        sc.add("cup", {cw, ch, cw}, fr.at(rc, 0, rest_y(ch)));
        sc.add("spoon", {sw, sh, sw}, fr.at(rs, 0, rest_y(sh)));
        const double grip_gap = 0.01;
        const Vec3 grip = fr.at(rs + sw * 0.5 + kHandW * 0.5, 0, -(grip_gap + kHandH * 0.5));
        const Vec3 offset = fr.delta(0.02, 0);
        sc.obj("hand").center0 = grip + offset - Vec3{0, 0.28 - grip_gap, 0};
        sc.move({"hand"}, {0, 0.15, 0}, 1.2);
        sc.move({"hand"}, {0, 0.28 - 0.15 - grip_gap, 0}, 1.2);
        sc.move({"hand"}, offset * -1.0, 0.6);
        sc.dwell(0.9);
        sc.move({"hand"}, fr.delta(0.03, 0), 0.4); // regrip: hover just beside
        sc.dwell(0.9);
        sc.move({"hand"}, fr.delta(-0.03, 0), 0.4);
        sc.dwell(0.9);
        sc.move({"hand", "spoon"}, {0, -0.29, 0}, 2.0); // clear the tall cup rim
        sc.move({"hand", "spoon"}, fr.delta(-(rs - rc), 0), 1.5, 0.3);
        sc.dwell(1.0);
        sc.move({"hand", "spoon"}, {0, 0.27, 0}, 0.6); // plunge into the cup
        sc.dwell(1.2);
        for (int c = 0; c < 2; ++c) {
            const double dir = (c % 2 == 0) ? 1.0 : -1.0;
            sc.move({"hand", "spoon"}, fr.delta(0, dir * 0.03), 0.6);
            sc.dwell(1.0);
        }
        sc.move({"hand"}, {0, -0.32, 0}, 0.8); // withdraw, spoon stays inside
        sc.dwell(0.5);
    } else if (act == "lay") {
        const double bw = 0.05, bh = jit(0.075, 0.004);
        const double rb = jit(0.20, 0.015);
        sc.add("block", {bw, bh, bw}, fr.at(rb, 0, rest_y(bh)));
        const Vec3 grip = fr.at(rb, 0, -(bh + kHandH * 0.5));
        staged_descent(sc, grip, 0.28, bh);
        sc.dwell(0.9);
        {
            // Tip over in place: bottom-anchored dim morph, the hand rides
            // the sinking top with a small slide so only the hand reads as
            // moving against the block.
            auto& blk = sc.obj("block");
            const Vec3 lying = oriented_dims(fr, bh, bw, bw);
            blk.dim_tracks.push_back({sc.cursor, sc.cursor + 2.2 * sc.scale, blk.dims, lying});
            blk.anchor_bottom = true;
            sc.obj("hand").tracks.push_back({sc.cursor, sc.cursor + 2.2 * sc.scale,
                                             fr.delta(0.025, 0, bh - bw)});
            sc.cursor += 2.2 * sc.scale;
        }
        sc.dwell(0.9);
        sc.move({"hand", "block"}, fr.delta(0.12, 0), 1.4); // nudge the lain piece aside
        sc.dwell(0.9);
        sc.move({"hand", "block"}, fr.delta(0.10, 0), 1.2); // and square it up
        sc.dwell(0.9);
        sc.move({"hand"}, {0, -0.05, 0}, 1.0); // release upward
        sc.dwell(0.4);
        sc.move({"hand"}, {0, -0.20, 0}, 1.5);
    } else if (act == "take_down") {
        const double pw = jit(0.16, 0.008), ph = jit(0.22, 0.008);
        const double bw = jit(0.06, 0.004), bh = 0.045;
        const double rp = jit(0.18, 0.01);
        sc.add("base", {pw, ph, pw}, fr.at(rp, 0, rest_y(ph)));
        sc.add("block", {bw, bh, bw}, fr.at(rp, 0, -(ph + bh * 0.5))); // stacked on the base
        const double grip_gap = ph + 0.01; // beside the stacked block, far above ground
        const Vec3 grip = fr.at(rp + bw * 0.5 + kHandW * 0.5, 0, -(grip_gap + kHandH * 0.5));
        // No 10 cm ground crossing up there: descend offset, then close in.
        sc.obj("hand").center0 = grip + fr.delta(0.02, 0, -0.20);
        sc.move({"hand"}, {0, 0.20, 0}, 1.9);
        sc.move({"hand"}, fr.delta(-0.02, 0), 0.7);
        sc.dwell(0.9);
        sc.move({"hand", "block"}, {0, -0.05, 0}, 1.0); // unstack
        sc.move({"hand", "block"}, fr.delta(0.20, 0), 0.55, 0.25); // quick carry clear of the base
        sc.move({"hand", "block"}, {0, ph + 0.05, 0}, 2.3, 0.25); // bring down to ground
        sc.dwell(0.9);
        sc.move({"hand"}, fr.delta(0.14, 0), 1.3); // release
        sc.dwell(0.4);
        sc.move({"hand"}, {0, -0.25, 0}, 1.6);
    } else if (act == "cut") {
        const double bw = jit(0.055, 0.004), bh = 0.045;
        const double kl = 0.11, kh = 0.022, kd = 0.03;
        const double rb = jit(0.20, 0.01);
        const double gap0 = 0.025;
        const double rk = rb + bw * 0.5 + kl * 0.5 + gap0;
        sc.add("block", {bw, bh, bw}, fr.at(rb, 0, rest_y(bh)));
        sc.add("knife", oriented_dims(fr, kl, kh, kd), fr.at(rk, 0, rest_y(kh)));
        const Vec3 grip = fr.at(rk, 0, -(kh + kHandH * 0.5));
        // Low entry: the hand slides in near the ground, then settles on top.
        sc.obj("hand").center0 = grip + fr.delta(0, 0.26, -(0.07 - kh));
        sc.move({"hand"}, fr.delta(0, -0.26), 1.7);
        sc.move({"hand"}, {0, 0.07 - kh, 0}, 0.9);
        sc.dwell(0.8);
        sc.move({"hand", "knife"}, fr.delta(-(gap0 + 0.004), 0), 0.9); // against the block
        sc.dwell(0.9);
        for (int c = 0; c < 3; ++c) { // sawing strokes across the face
            const double dir = (c % 2 == 0) ? 1.0 : -1.0;
            sc.move({"hand", "knife"}, fr.delta(0, dir * 0.025), 0.7);
            sc.dwell(1.2);
        }
        sc.destroy("block");
        sc.dwell(1.2);
        sc.move({"hand", "knife"}, fr.delta(0.10, 0), 1.1); // retract
        sc.dwell(0.9);
        sc.move({"hand"}, {0, -0.07, 0}, 0.9); // release, stays low
        sc.dwell(0.3);
        sc.move({"hand"}, fr.delta(0, 0.24), 1.2); // leave low
    } else if (act == "chop") {
        const double bw = jit(0.055, 0.004), bh = 0.045;
        const double kl = 0.11, kh = 0.022, kd = 0.03;
        const double rb = jit(0.15, 0.005);
        const double strike = 0.16;
        const double rk = rb + bw * 0.5 + kl * 0.5 + strike;
        sc.add("block", {bw, bh, bw}, fr.at(rb, 0, rest_y(bh)));
        sc.add("knife", oriented_dims(fr, kl, kh, kd), fr.at(rk, 0, rest_y(kh)));
        const Vec3 grip = fr.at(rk, 0, -(kh + kHandH * 0.5));
        sc.obj("hand").center0 = grip + fr.delta(0, 0.26, -(0.07 - kh));
        sc.move({"hand"}, fr.delta(0, -0.26), 1.7);
        sc.move({"hand"}, {0, 0.07 - kh, 0}, 0.9);
        sc.dwell(0.9);
        sc.move({"hand", "knife"}, fr.delta(-(strike - 0.004), 0), 0.9); // strike home
        sc.dwell(1.2);
        sc.destroy("block");
        sc.dwell(1.2);
        sc.move({"hand", "knife"}, fr.delta(0.10, 0), 1.3); // retract
        sc.dwell(0.9);
        sc.move({"hand"}, {0, -0.07, 0}, 0.9);
        sc.dwell(0.3);
        sc.move({"hand"}, fr.delta(0, 0.24), 1.2);
    } else if (act == "push") {
        const double bw = jit(0.06, 0.004), bh = 0.05;
        const double rb = jit(0.18, 0.01);
        sc.add("block", {bw, bh, bw}, fr.at(rb, 0, rest_y(bh)));
        const double grip_gap = 0.015;
        const Vec3 grip = fr.at(rb - bw * 0.5 - kHandW * 0.5, 0, -(grip_gap + kHandH * 0.5));
        // Low sideways entry, then a short step onto the inner face.
        sc.obj("hand").center0 = grip + fr.delta(-0.02, 0.28, -(0.07 - grip_gap));
        sc.move({"hand"}, fr.delta(0, -0.28), 2.6);
        sc.move({"hand"}, {0, 0.07 - grip_gap, 0}, 1.0);
        sc.move({"hand"}, fr.delta(0.02, 0), 0.8);
        sc.dwell(2.0);
        sc.move({"hand", "block"}, fr.delta(0.26, 0), 0.6); // outward shove, reads MA
        sc.dwell(2.0);
        sc.move({"hand"}, fr.delta(-0.12, 0), 1.4); // withdraw
        sc.dwell(0.6);
        sc.move({"hand"}, fr.delta(0, 0.24), 1.8); // leave low
    } else if (act == "uncover") {
        const double cw = jit(0.13, 0.006), ch = jit(0.12, 0.006);
        const double bw = 0.05, bh = 0.04;
        const double rc = jit(0.18, 0.01);
        sc.add("cup", {cw, ch, cw}, fr.at(rc, 0, rest_y(ch)));
        sc.add("block", {bw, bh, bw}, fr.at(rc, 0, rest_y(bh)));
        sc.obj("block").visible_from = kInf; // covered at start
        const double grip_gap = 0.015;
        const Vec3 grip = fr.at(rc + cw * 0.5 + kHandW * 0.5, 0, -(grip_gap + kHandH * 0.5));
        // Low entry at grip height; the last 2 cm close separately.
        sc.obj("hand").center0 = grip + fr.delta(0.28, 0);
        sc.move({"hand"}, fr.delta(-0.26, 0), 1.9);
        sc.move({"hand"}, fr.delta(-0.02, 0), 0.7);
        sc.dwell(0.9);
        sc.reveal_when_apart("block", "cup", "block");
        sc.move({"hand", "cup"}, fr.delta(0, 0.24), 2.4); // drag the cover aside
        sc.dwell(0.8);
        sc.move({"hand"}, fr.delta(0.12, 0), 1.2); // release
        sc.dwell(0.4);
        sc.move({"hand"}, fr.delta(0.20, 0), 1.3);
    }

    // Distractors sit far behind the action on the opposite side.
    for (int d = 0; d < params.distractor_count; ++d) {
        const double w = rng.uniform(0.04, 0.07);
        const double h = rng.uniform(0.04, 0.08);
        const double ang = theta + 3.14159265358979 + (d - 1) * 0.5 + rng.uniform(-0.1, 0.1);
        const double rad = 0.32 + 0.06 * d + rng.uniform(-0.015, 0.015);
        sc.add("distractor" + std::to_string(d), {w, h, w},
               {std::cos(ang) * rad, rest_y(h), std::sin(ang) * rad});
    }

    // Stretch the nominal script onto the sampled duration.
    double span = sc.cursor;
    for (const auto& o : sc.objects)
        for (const auto& tr : o.tracks) span = std::max(span, tr.t1);
    const double stretch = duration / std::max(span, 1e-9);
    for (auto& o : sc.objects) {
        for (auto& tr : o.tracks) {
            tr.t0 *= stretch;
            tr.t1 *= stretch;
        }
        for (auto& m : o.dim_tracks) {
            m.t0 *= stretch;
            m.t1 *= stretch;
        }
        if (o.intact_false_from < kInf) o.intact_false_from *= stretch;
    }
    for (auto& tg : sc.triggers) tg.search_from *= stretch;

    // Sample frames: half a second of lead-in and lead-out without the hand.
    const int pre = static_cast<int>(std::lround(0.5 * params.fps));
    const int win = static_cast<int>(std::lround(duration * params.fps)) + 1;
    const int post = static_cast<int>(std::lround(0.5 * params.fps));
    const double pre_t = pre / params.fps;

    SceneStream out;
    out.fps = params.fps;
    out.label = params.action;
    out.y_down = true;

    for (int i = 0; i < pre + win + post; ++i) {
        FrameRecord f;
        f.index = i;
        f.t = i / params.fps;
        const double tau = std::clamp(f.t - pre_t, 0.0, duration);
        const bool hand_present = i >= pre && i < pre + win;
        for (const auto& o : sc.objects) {
            if (o.is_hand && !hand_present) continue;
            ObjectState s;
            s.id = o.id;
            s.aabb = o.box_at(tau);
            s.is_hand = o.is_hand;
            s.is_ground = o.is_ground;
            s.visible = tau >= o.visible_from && tau < o.visible_false_from;
            s.intact = tau < o.intact_false_from;
            f.objects.push_back(std::move(s));
        }
        out.frames.push_back(std::move(f));
    }

    // Resolve gap triggers against the sampled frames.
    for (const auto& tg : sc.triggers) {
        int fire_frame = -1;
        for (int i = pre; i < pre + win; ++i) {
            const double tau = out.frames[static_cast<std::size_t>(i)].t - pre_t;
            if (tau < tg.search_from) continue;
            const auto* a = out.frames[static_cast<std::size_t>(i)].find(tg.ref_a);
            const auto* b = out.frames[static_cast<std::size_t>(i)].find(tg.ref_b);
            if (!a || !b) continue;
            const bool touching_now = gap_distance(a->aabb, b->aabb) <= params.eps_touch;
            if (touching_now == tg.fire_when_touching) {
                fire_frame = i;
                break;
            }
        }
        for (int i = 0; i < static_cast<int>(out.frames.size()); ++i) {
            for (auto& o : out.frames[static_cast<std::size_t>(i)].objects) {
                if (o.id != tg.subject) continue;
                const bool after = fire_frame >= 0 && i >= fire_frame;
                if (tg.make_visible)
                    o.visible = after;
                else if (after)
                    o.visible = false;
            }
        }
    }

    // Start-pose sanity: boxes may touch (stacks, covers) but not interpenetrate,
    // except the deliberate cover in uncover.
    const auto& first = out.frames.front();
    for (std::size_t i = 0; i < first.objects.size(); ++i) {
        for (std::size_t j = i + 1; j < first.objects.size(); ++j) {
            const auto& a = first.objects[i];
            const auto& b = first.objects[j];
            if (a.is_ground || b.is_ground) continue;
            if (act == "uncover" && ((a.id == "cup" && b.id == "block") || (a.id == "block" && b.id == "cup")))
                continue;
            double overlap = 1.0;
            for (std::size_t k = 0; k < 3; ++k)
                overlap = std::min(overlap, std::min(a.aabb.max[k], b.aabb.max[k]) -
                                                std::max(a.aabb.min[k], b.aabb.min[k]));
            if (overlap > 1e-9)
                throw std::invalid_argument("infeasible geometry: objects overlap at start (" + a.id +
                                            ", " + b.id + ")");
        }
    }

    validate_scene(out);
    return out;
}

std::vector<SuiteFile> generate_suite(const std::vector<std::string>& actions,
                                      int variants_per_action, std::uint64_t master_seed,
                                      const std::string& out_dir, int jobs) {
    if (variants_per_action < 1) throw std::invalid_argument("variants_per_action must be >= 1");
    fs::create_directories(out_dir);

    std::vector<SuiteFile> files;
    for (const auto& action : actions) {
        for (int v = 0; v < variants_per_action; ++v) {
            SuiteFile f;
            f.action = action;
            f.variant = v;
            // Stable per-file seeds derived from the master seed.
            Rng mix = Rng::substream(master_seed, std::hash<std::string>{}(action) * 1315423911ULL +
                                                      static_cast<std::uint64_t>(v));
            f.seed = mix.next_u64();
            char name[64];
            std::snprintf(name, sizeof(name), "%s_%03d.jsonl", action.c_str(), v);
            f.path = (fs::path(out_dir) / name).string();
            files.push_back(std::move(f));
        }
    }

    parallel_for(files.size(), jobs, [&](std::size_t i) {
        const auto& f = files[i];
        GenParams p;
        p.action = f.action;
        p.seed = f.seed;
        p.distractor_count = f.variant % 4;
        save_scene(generate_scene(p), f.path);
    });

    json manifest;
    manifest["master_seed"] = master_seed;
    manifest["variants_per_action"] = variants_per_action;
    json list = json::array();
    for (const auto& f : files) {
        json e;
        e["path"] = fs::path(f.path).filename().string();
        e["action"] = f.action;
        e["variant"] = f.variant;
        e["seed"] = f.seed;
        list.push_back(e);
    }
    manifest["files"] = list;
    std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
    if (!mf) throw std::runtime_error("cannot write manifest in " + out_dir);
    mf << manifest.dump(2) << '\n';

    return files;
}

} // namespace esec
