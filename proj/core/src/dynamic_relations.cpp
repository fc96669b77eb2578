#include "esec/dynamic_relations.hpp"

namespace esec {

Dsr dsr(const Aabb& a_f, const Aabb& b_f, const Aabb& a_w, const Aabb& b_w,
        Tn tn_f, Tn tn_w, const DynamicConfig& cfg) {
    const Vec3 ca_f = a_f.center(), cb_f = b_f.center();
    const Vec3 ca_w = a_w.center(), cb_w = b_w.center();
    const double delta_f = distance(ca_f, cb_f);
    const double delta_w = distance(ca_w, cb_w);
    const double change = delta_w - delta_f;

    const bool con1 = tn_f == Tn::T && tn_w == Tn::T;
    const bool con2 = tn_f == Tn::N && tn_w == Tn::N;
    const bool a_moved = distance(ca_f, ca_w) > cfg.move_eps;
    const bool b_moved = distance(cb_f, cb_w) > cfg.move_eps;

    if (con1) {
        if (a_moved && b_moved) return Dsr::MT;
        if (!a_moved && !b_moved) return Dsr::HT;
        return Dsr::FMT;
    }
    if (con2) {
        if (cfg.paper_literal_gc) {
            // Literal inequality, kept for comparison: labels nearly everything GC.
            if (change < cfg.xi) return Dsr::GC;
        } else if (change < -cfg.xi) {
            return Dsr::GC;
        }
        if (change > cfg.xi) return Dsr::MA;
        // A resting pair further apart than the far threshold is Q, not S.
        if (std::abs(change) < cfg.stable_eps && delta_f <= cfg.far_threshold) return Dsr::S;
    }
    return Dsr::Q;
}

std::vector<Dsr> dsr_track(const SceneStream& stream, const std::string& id_a,
                           const std::string& id_b, const DynamicConfig& cfg,
                           const StaticConfig& static_cfg) {
    const int n = static_cast<int>(stream.frames.size());
    std::vector<Dsr> out(static_cast<std::size_t>(n), Dsr::U);

    Dsr last = Dsr::U;
    bool have_last = false;
    for (int f = 0; f < n; ++f) {
        const ObjectState* a_f = stream.frames[static_cast<std::size_t>(f)].find(id_a);
        const ObjectState* b_f = stream.frames[static_cast<std::size_t>(f)].find(id_b);
        if (!a_f || !b_f) continue; // pair not co-existing here: stays U
        const int w = f + cfg.window;
        const ObjectState* a_w = w < n ? stream.frames[static_cast<std::size_t>(w)].find(id_a) : nullptr;
        const ObjectState* b_w = w < n ? stream.frames[static_cast<std::size_t>(w)].find(id_b) : nullptr;
        if (!a_w || !b_w) {
            // Window runs past the pair's presence: hold the last label.
            if (have_last) out[static_cast<std::size_t>(f)] = last;
            continue;
        }
        const Tn tn_f = touching(*a_f, *b_f, static_cfg);
        const Tn tn_w = touching(*a_w, *b_w, static_cfg);
        last = dsr(a_f->aabb, b_f->aabb, a_w->aabb, b_w->aabb, tn_f, tn_w, cfg);
        have_last = true;
        out[static_cast<std::size_t>(f)] = last;
    }
    return out;
}

} // namespace esec
