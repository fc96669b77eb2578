#pragma once

#include "esec/dynamic_relations.hpp"
#include "esec/relations.hpp"
#include "esec/scene.hpp"
#include "esec/static_relations.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace esec {

/// Role slots of the five table entities, in row order H, 1, 2, 3, G.
enum class Role : int { Hand = 0, Obj1 = 1, Obj2 = 2, Obj3 = 3, Ground = 4 };

inline constexpr int kPairCount = 10;

/// The fixed pair order (H,1),(H,2),(H,3),(H,G),(1,2),(1,3),(1,G),(2,3),(2,G),(3,G).
const std::array<std::pair<Role, Role>, kPairCount>& pair_order();
std::string pair_name(int pair_index);

/// Mapping from roles to scene object ids. Objects 1..3 are numbered by the
/// order in which real objects first enter a touch or un-touch relation with
/// an already-roled entity; the hand's first touch defines Object 1.
struct RoleMap {
    std::string hand_id;
    std::optional<std::string> ground_id;
    std::array<std::optional<std::string>, 3> object_ids;
    std::array<int, 3> assign_frame{-1, -1, -1}; // frame position of assignment
    int window_first = 0;                        // first frame position with the hand visible
    int window_last = 0;                         // last frame position with the hand visible

    std::optional<std::string> id_of(Role r) const;
    bool assigned(Role r, int frame_pos) const;
    bool operator==(const RoleMap&) const = default;
};

struct EsecColumn {
    std::array<Tn, kPairCount> tn{};
    std::array<Ssr, kPairCount> ssr{};
    std::array<Dsr, kPairCount> dsr{};
    double t = 0.0;
    int frame = 0;

    bool same_cells(const EsecColumn& o) const { return tn == o.tn && ssr == o.ssr && dsr == o.dsr; }
    bool operator==(const EsecColumn&) const = default;
};

/// The 30-row event chain: one column per change of any pair relation.
struct Esec {
    std::vector<EsecColumn> columns;
    RoleMap roles;
    std::optional<std::string> label;
    double t_start = 0.0; // action window (hand appears / leaves)
    double t_end = 0.0;

    double total_time() const { return t_end - t_start; }
    bool operator==(const Esec&) const = default;
};

struct SecColumn {
    std::array<Tn, kPairCount> tn{};
    double t = 0.0;
    int frame = 0;
    bool operator==(const SecColumn&) const = default;
};

/// Touching sub-table alone, adjacent duplicates merged.
struct Sec {
    std::vector<SecColumn> columns;
    std::optional<std::string> label;
    double t_start = 0.0;
    double t_end = 0.0;
    bool operator==(const Sec&) const = default;
};

struct ActionWindow {
    int first_frame_pos = 0;
    int last_frame_pos = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    double total() const { return t_end - t_start; }
};

/// First/last hand-visible frames. Throws when no hand ever appears.
ActionWindow action_window(const SceneStream& stream);

struct BuildOptions {
    StaticConfig static_cfg{};
    DynamicConfig dynamic_cfg{};
    int debounce = 0;          // frames a new relation vector must persist beyond the first
    bool literal_roles = false; // verbal role rule instead of chronological assignment
};

RoleMap assign_roles(const SceneStream& stream, const BuildOptions& opt = {});

/// Build the event chain over the action window: evaluate the 30-cell
/// relation vector per frame and keep one column per change, timestamped at
/// the first frame exhibiting the new vector.
Esec build_esec(const SceneStream& stream, const BuildOptions& opt = {});

/// Keep the touching rows only and merge adjacent duplicate columns
/// (earliest timestamp per merged run).
Sec project_sec(const Esec& esec);

// File format: JSON with roles, pairs, columns (t, frame, tn, ssr, dsr), label.
std::string esec_to_json(const Esec& esec);
Esec esec_from_json(const std::string& text);
void save_esec(const Esec& esec, const std::string& path);
Esec load_esec(const std::string& path);

} // namespace esec
