#include "esec/table.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace esec {

const std::array<std::pair<Role, Role>, kPairCount>& pair_order() {
    static const std::array<std::pair<Role, Role>, kPairCount> order = {{
        {Role::Hand, Role::Obj1},
        {Role::Hand, Role::Obj2},
        {Role::Hand, Role::Obj3},
        {Role::Hand, Role::Ground},
        {Role::Obj1, Role::Obj2},
        {Role::Obj1, Role::Obj3},
        {Role::Obj1, Role::Ground},
        {Role::Obj2, Role::Obj3},
        {Role::Obj2, Role::Ground},
        {Role::Obj3, Role::Ground},
    }};
    return order;
}

namespace {

std::string role_name(Role r) {
    switch (r) {
        case Role::Hand: return "H";
        case Role::Obj1: return "1";
        case Role::Obj2: return "2";
        case Role::Obj3: return "3";
        case Role::Ground: return "G";
    }
    return "?";
}

} // namespace

std::string pair_name(int pair_index) {
    const auto& [a, b] = pair_order()[static_cast<std::size_t>(pair_index)];
    return role_name(a) + "," + role_name(b);
}

std::optional<std::string> RoleMap::id_of(Role r) const {
    switch (r) {
        case Role::Hand: return hand_id.empty() ? std::nullopt : std::optional(hand_id);
        case Role::Ground: return ground_id;
        case Role::Obj1: return object_ids[0];
        case Role::Obj2: return object_ids[1];
        case Role::Obj3: return object_ids[2];
    }
    return std::nullopt;
}

bool RoleMap::assigned(Role r, int frame_pos) const {
    switch (r) {
        case Role::Hand: return !hand_id.empty() && frame_pos >= window_first;
        case Role::Ground: return ground_id.has_value() && frame_pos >= window_first;
        case Role::Obj1: return object_ids[0] && assign_frame[0] >= 0 && frame_pos >= assign_frame[0];
        case Role::Obj2: return object_ids[1] && assign_frame[1] >= 0 && frame_pos >= assign_frame[1];
        case Role::Obj3: return object_ids[2] && assign_frame[2] >= 0 && frame_pos >= assign_frame[2];
    }
    return false;
}

ActionWindow action_window(const SceneStream& stream) {
    int first = -1, last = -1;
    for (int p = 0; p < static_cast<int>(stream.frames.size()); ++p) {
        for (const auto& o : stream.frames[static_cast<std::size_t>(p)].objects) {
            if (o.is_hand && o.visible) {
                if (first < 0) first = p;
                last = p;
                break;
            }
        }
    }
    if (first < 0) throw std::runtime_error("no action window: hand never appears");
    ActionWindow w;
    w.first_frame_pos = first;
    w.last_frame_pos = last;
    w.t_start = stream.frames[static_cast<std::size_t>(first)].t;
    w.t_end = stream.frames[static_cast<std::size_t>(last)].t;
    return w;
}

namespace {

// Visibility-independent touch state used for the role scan; transitions of
// this state are the "come into being" events.
bool geometric_touch(const FrameRecord& f, const std::string& a, const std::string& b,
                     const StaticConfig& cfg) {
    const ObjectState* oa = f.find(a);
    const ObjectState* ob = f.find(b);
    if (!oa || !ob) return false;
    return touching(*oa, *ob, cfg) == Tn::T;
}

std::vector<std::string> sorted_plain_ids(const SceneStream& stream) {
    std::set<std::string> ids;
    for (const auto& f : stream.frames)
        for (const auto& o : f.objects)
            if (!o.is_hand && !o.is_ground) ids.insert(o.id);
    return {ids.begin(), ids.end()};
}

} // namespace

RoleMap assign_roles(const SceneStream& stream, const BuildOptions& opt) {
    const ActionWindow win = action_window(stream);
    RoleMap roles;
    roles.window_first = win.first_frame_pos;
    roles.window_last = win.last_frame_pos;

    for (const auto& f : stream.frames) {
        for (const auto& o : f.objects) {
            if (o.is_hand && roles.hand_id.empty()) roles.hand_id = o.id;
            if (o.is_ground && !roles.ground_id) roles.ground_id = o.id;
        }
    }

    const auto candidates = sorted_plain_ids(stream);
    const auto& cfg = opt.static_cfg;

    auto unroled = [&](const std::string& id) {
        for (const auto& r : roles.object_ids)
            if (r && *r == id) return false;
        return true;
    };
    auto next_slot = [&]() -> int {
        for (int k = 0; k < 3; ++k)
            if (!roles.object_ids[static_cast<std::size_t>(k)]) return k;
        return -1;
    };

    if (opt.literal_roles) {
        // Verbal rule: 1 = first hand-touched, 2 = first un-touched by 1,
        // 3 = first touched by 1.
        for (int p = win.first_frame_pos; p <= win.last_frame_pos && !roles.object_ids[0]; ++p) {
            const auto& fr = stream.frames[static_cast<std::size_t>(p)];
            for (const auto& id : candidates) {
                if (geometric_touch(fr, roles.hand_id, id, cfg)) {
                    roles.object_ids[0] = id;
                    roles.assign_frame[0] = p;
                    break;
                }
            }
        }
        if (roles.object_ids[0]) {
            for (int p = roles.assign_frame[0] + 1; p <= win.last_frame_pos; ++p) {
                const auto& prev = stream.frames[static_cast<std::size_t>(p - 1)];
                const auto& cur = stream.frames[static_cast<std::size_t>(p)];
                for (const auto& id : candidates) {
                    if (!unroled(id)) continue;
                    const bool was = geometric_touch(prev, *roles.object_ids[0], id, cfg);
                    const bool now = geometric_touch(cur, *roles.object_ids[0], id, cfg);
                    if (was && !now && !roles.object_ids[1]) {
                        roles.object_ids[1] = id;
                        roles.assign_frame[1] = p;
                    } else if (!was && now && !roles.object_ids[2]) {
                        roles.object_ids[2] = id;
                        roles.assign_frame[2] = p;
                    }
                }
            }
        }
        return roles;
    }

    // Chronological rule: the next distinct object entering any touch or
    // un-touch relation with an already-roled entity takes the next free
    // number. Simultaneous events break ties by lexicographic id.
    for (int p = win.first_frame_pos; p <= win.last_frame_pos; ++p) {
        const auto& cur = stream.frames[static_cast<std::size_t>(p)];
        bool assigned_here = true;
        while (assigned_here && next_slot() >= 0) {
            assigned_here = false;
            for (const auto& id : candidates) {
                if (!unroled(id)) continue;
                bool event = false;
                if (!roles.object_ids[0]) {
                    // Object 1: first object the hand touches.
                    event = geometric_touch(cur, roles.hand_id, id, cfg);
                } else {
                    std::vector<std::string> roled = {roles.hand_id};
                    if (roles.ground_id) roled.push_back(*roles.ground_id);
                    for (const auto& r : roles.object_ids)
                        if (r) roled.push_back(*r);
                    if (p > win.first_frame_pos) {
                        const auto& prev = stream.frames[static_cast<std::size_t>(p - 1)];
                        for (const auto& r : roled) {
                            const bool was = geometric_touch(prev, r, id, cfg);
                            const bool now = geometric_touch(cur, r, id, cfg);
                            if (was != now) {
                                event = true;
                                break;
                            }
                        }
                    }
                }
                if (event) {
                    const int slot = next_slot();
                    if (slot < 0) break;
                    roles.object_ids[static_cast<std::size_t>(slot)] = id;
                    roles.assign_frame[static_cast<std::size_t>(slot)] = p;
                    assigned_here = true;
                    break; // rescan: the new role may trigger further events this frame
                }
            }
        }
    }
    return roles;
}

namespace {

struct CellVector {
    std::array<Tn, kPairCount> tn{};
    std::array<Ssr, kPairCount> ssr{};
    std::array<Dsr, kPairCount> dsr{};
    bool operator==(const CellVector&) const = default;
};

} // namespace

Esec build_esec(const SceneStream& stream, const BuildOptions& opt) {
    const ActionWindow win = action_window(stream);
    const RoleMap roles = assign_roles(stream, opt);

    // Geometric dynamic-relation tracks per pair over the whole stream.
    std::array<std::vector<Dsr>, kPairCount> tracks;
    for (int k = 0; k < kPairCount; ++k) {
        const auto& [ra, rb] = pair_order()[static_cast<std::size_t>(k)];
        const auto ia = roles.id_of(ra);
        const auto ib = roles.id_of(rb);
        if (ia && ib)
            tracks[static_cast<std::size_t>(k)] =
                dsr_track(stream, *ia, *ib, opt.dynamic_cfg, opt.static_cfg);
        else
            tracks[static_cast<std::size_t>(k)].assign(stream.frames.size(), Dsr::U);
    }

    auto vector_at = [&](int p) {
        CellVector v;
        const auto& fr = stream.frames[static_cast<std::size_t>(p)];
        for (int k = 0; k < kPairCount; ++k) {
            const auto& [ra, rb] = pair_order()[static_cast<std::size_t>(k)];
            if (!roles.assigned(ra, p) || !roles.assigned(rb, p)) {
                v.tn[static_cast<std::size_t>(k)] = Tn::U;
                v.ssr[static_cast<std::size_t>(k)] = Ssr::U;
                v.dsr[static_cast<std::size_t>(k)] = Dsr::U;
                continue;
            }
            const ObjectState* a = fr.find(*roles.id_of(ra));
            const ObjectState* b = fr.find(*roles.id_of(rb));
            if (!a || !b || !a->intact || !b->intact) {
                const bool destroyed = (a && !a->intact) || (b && !b->intact);
                const Tn t = destroyed ? Tn::X : Tn::A;
                v.tn[static_cast<std::size_t>(k)] = t;
                v.ssr[static_cast<std::size_t>(k)] = destroyed ? Ssr::X : Ssr::A;
                v.dsr[static_cast<std::size_t>(k)] = destroyed ? Dsr::X : Dsr::A;
                continue;
            }
            if (!a->visible || !b->visible) {
                v.tn[static_cast<std::size_t>(k)] = Tn::A;
                v.ssr[static_cast<std::size_t>(k)] = Ssr::A;
                v.dsr[static_cast<std::size_t>(k)] = Dsr::A;
                continue;
            }
            const Tn t = touching(*a, *b, opt.static_cfg);
            v.tn[static_cast<std::size_t>(k)] = t;
            v.ssr[static_cast<std::size_t>(k)] = main_ssr(*a, *b, t, opt.static_cfg);
            v.dsr[static_cast<std::size_t>(k)] = tracks[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
        }
        return v;
    };

    Esec out;
    out.roles = roles;
    out.label = stream.label;
    out.t_start = win.t_start;
    out.t_end = win.t_end;

    const int persist = opt.debounce + 1;
    CellVector current{};
    bool have_current = false;
    CellVector pending{};
    int pending_first = -1;
    int pending_count = 0;

    auto emit = [&](const CellVector& v, int p0) {
        EsecColumn col;
        col.tn = v.tn;
        col.ssr = v.ssr;
        col.dsr = v.dsr;
        col.t = stream.frames[static_cast<std::size_t>(p0)].t;
        col.frame = stream.frames[static_cast<std::size_t>(p0)].index;
        out.columns.push_back(col);
        current = v;
        have_current = true;
        pending_first = -1;
        pending_count = 0;
    };

    for (int p = win.first_frame_pos; p <= win.last_frame_pos; ++p) {
        const CellVector v = vector_at(p);
        if (!have_current) {
            emit(v, p); // column 0: the start situation
            continue;
        }
        if (v == current) {
            pending_first = -1; // transient change that reverted
            pending_count = 0;
            continue;
        }
        if (pending_first >= 0 && v == pending) {
            if (++pending_count >= persist) emit(pending, pending_first);
        } else {
            pending = v;
            pending_first = p;
            pending_count = 1;
            if (pending_count >= persist) emit(pending, pending_first);
        }
    }
    return out;
}

Sec project_sec(const Esec& esec) {
    Sec sec;
    sec.label = esec.label;
    sec.t_start = esec.t_start;
    sec.t_end = esec.t_end;
    for (const auto& col : esec.columns) {
        if (!sec.columns.empty() && sec.columns.back().tn == col.tn) continue;
        SecColumn c;
        c.tn = col.tn;
        c.t = col.t;
        c.frame = col.frame;
        sec.columns.push_back(c);
    }
    return sec;
}

std::string esec_to_json(const Esec& esec) {
    json j;
    j["label"] = esec.label ? json(*esec.label) : json(nullptr);
    json roles;
    roles["H"] = esec.roles.hand_id;
    roles["G"] = esec.roles.ground_id ? json(*esec.roles.ground_id) : json(nullptr);
    const char* names[3] = {"1", "2", "3"};
    for (int k = 0; k < 3; ++k) {
        const auto& id = esec.roles.object_ids[static_cast<std::size_t>(k)];
        roles[names[k]] = id ? json(*id) : json(nullptr);
    }
    j["roles"] = roles;
    json pairs = json::array();
    for (int k = 0; k < kPairCount; ++k) pairs.push_back(pair_name(k));
    j["pairs"] = pairs;
    j["t_start"] = esec.t_start;
    j["t_end"] = esec.t_end;
    json cols = json::array();
    for (const auto& col : esec.columns) {
        json c;
        c["t"] = col.t;
        c["frame"] = col.frame;
        json tn = json::array(), ssr = json::array(), dsr = json::array();
        for (int k = 0; k < kPairCount; ++k) {
            tn.push_back(to_symbol(col.tn[static_cast<std::size_t>(k)]));
            ssr.push_back(to_symbol(col.ssr[static_cast<std::size_t>(k)]));
            dsr.push_back(to_symbol(col.dsr[static_cast<std::size_t>(k)]));
        }
        c["tn"] = tn;
        c["ssr"] = ssr;
        c["dsr"] = dsr;
        cols.push_back(c);
    }
    j["columns"] = cols;
    return j.dump(2);
}

Esec esec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed event chain file: ") + e.what());
    }
    Esec out;
    if (j.contains("label") && !j.at("label").is_null()) out.label = j.at("label").get<std::string>();
    if (j.contains("roles")) {
        const auto& r = j.at("roles");
        if (r.contains("H") && r.at("H").is_string()) out.roles.hand_id = r.at("H").get<std::string>();
        if (r.contains("G") && r.at("G").is_string()) out.roles.ground_id = r.at("G").get<std::string>();
        const char* names[3] = {"1", "2", "3"};
        for (int k = 0; k < 3; ++k)
            if (r.contains(names[k]) && r.at(names[k]).is_string())
                out.roles.object_ids[static_cast<std::size_t>(k)] = r.at(names[k]).get<std::string>();
    }
    out.t_start = j.value("t_start", 0.0);
    out.t_end = j.value("t_end", 0.0);
    for (const auto& c : j.at("columns")) {
        EsecColumn col;
        col.t = c.value("t", 0.0);
        col.frame = c.value("frame", 0);
        const auto& tn = c.at("tn");
        const auto& ssr = c.at("ssr");
        const auto& dsr = c.at("dsr");
        if (tn.size() != kPairCount || ssr.size() != kPairCount || dsr.size() != kPairCount)
            throw std::runtime_error("malformed event chain file: sub-table row count is not 10");
        for (int k = 0; k < kPairCount; ++k) {
            col.tn[static_cast<std::size_t>(k)] = tn_from_symbol(tn[static_cast<std::size_t>(k)].get<std::string>());
            col.ssr[static_cast<std::size_t>(k)] = ssr_from_symbol(ssr[static_cast<std::size_t>(k)].get<std::string>());
            col.dsr[static_cast<std::size_t>(k)] = dsr_from_symbol(dsr[static_cast<std::size_t>(k)].get<std::string>());
        }
        out.columns.push_back(col);
    }
    if (out.columns.empty()) throw std::runtime_error("malformed event chain file: no columns");
    return out;
}

void save_esec(const Esec& esec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << esec_to_json(esec) << '\n';
}

Esec load_esec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return esec_from_json(ss.str());
}

} // namespace esec
