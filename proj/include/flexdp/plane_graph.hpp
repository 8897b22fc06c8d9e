#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flexdp/errors.hpp"

namespace flexdp {

/// A face traced from the rotation system. `boundary` lists the tail vertex
/// of each directed edge of the face orbit, in traversal order; a vertex can
/// appear more than once (cut vertices). Length = boundary.size(), counting
/// edge traversals with multiplicity. A component that is a single vertex
/// contributes one face with an empty boundary.
struct Face {
    std::vector<int> boundary;
    int length() const { return static_cast<int>(boundary.size()); }
    bool contains(int v) const;
};

enum class VertexTag { Three, K1, K2, Four3, Heavy, Special, Other };
const char* vertex_tag_name(VertexTag t);

struct VertexClass {
    VertexTag tag;
    int degree;
    int incident_3_faces;
    int pendent_3_faces;
    bool rich() const {
        return (tag == VertexTag::Special && degree >= 5) || (tag == VertexTag::Heavy && degree >= 4);
    }
};

enum class FaceTag { PoorI, PoorII, Plain };
const char* face_tag_name(FaceTag t);

struct FaceClass {
    FaceTag tag;
    std::vector<int> weakly_incident; // sorted vertex ids
};

struct ClassReport {
    std::optional<std::array<int, 4>> four_cycle;            // cycle order
    std::optional<std::pair<std::array<int, 3>, std::array<int, 3>>> intersecting_triangles;
    bool in_class() const { return !four_cycle && !intersecting_triangles; }
};

struct PendentStructure {
    std::vector<int> faces;     // face ids, sorted
    std::vector<int> neighbors; // pendent 3-neighbors, sorted
};

/// Embedded simple plane graph. Immutable once built; faces, the class
/// report and connectivity are computed at construction time, every query
/// afterwards is pure.
class PlaneGraph {
public:
    /// `rotations[v]` lists the neighbors of v in counterclockwise order.
    /// Validates simplicity and symmetry, traces faces, and checks the Euler
    /// relation per connected component (n - m + f = 2). Disconnected input
    /// is accepted and flagged; operations that need connectivity reject it
    /// themselves.
    static PlaneGraph from_rotations(std::vector<std::vector<int>> rotations);

    int num_vertices() const { return static_cast<int>(rot_.size()); }
    int num_edges() const { return num_edges_; }
    int num_components() const { return components_; }
    bool connected() const { return components_ == 1 && num_vertices() > 0; }

    int degree(int v) const { return static_cast<int>(rot_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return rot_[v]; }
    const std::vector<std::vector<int>>& rotations() const { return rot_; }
    bool adjacent(int u, int v) const;
    std::vector<std::pair<int, int>> edges() const; // u < v, sorted

    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int id) const { return faces_[id]; }
    /// Face ids incident to v; a face appears once per occurrence of v on
    /// its boundary (multiplicity).
    const std::vector<int>& faces_at(int v) const { return faces_at_[v]; }
    /// Face id on the left of directed edge u->v (the orbit containing it).
    int face_of(int u, int v) const;
    std::optional<int> find_face(const std::vector<int>& vertex_set) const;

    int distance(int u, int v) const;

    const ClassReport& class_membership() const { return class_report_; }

    PendentStructure pendent_3_structure(int v) const;
    /// Requires the graph in class and d(v) >= 3.
    VertexClass classify_vertex(int v) const;
    /// Requires a 5-face and the graph in class.
    FaceClass classify_5_face(int face_id) const;

    /// Induced subgraph on `keep` (sorted or not); rotations restricted in
    /// order. Returns the graph plus the map new-index -> old-index.
    std::pair<PlaneGraph, std::vector<int>> induced(const std::vector<int>& keep) const;

private:
    PlaneGraph() = default;
    void trace_faces();
    void compute_class_report();

    std::vector<std::vector<int>> rot_;
    int num_edges_ = 0;
    int components_ = 0;
    std::vector<Face> faces_;
    std::vector<std::vector<int>> faces_at_;
    // position of each directed edge's face: key (u, index of v in rot_[u])
    std::vector<std::vector<int>> face_of_dir_;
    ClassReport class_report_;
};

// --- embedding-free structural detectors (shared with apex-augmented
//     forbidding tests; adjacency lists need not be sorted) ---
std::optional<std::array<int, 4>> find_four_cycle(const std::vector<std::vector<int>>& adj);
std::optional<std::pair<std::array<int, 3>, std::array<int, 3>>>
find_intersecting_triangles(const std::vector<std::vector<int>>& adj);

// --- .pg text format ---
PlaneGraph parse_pg(const std::string& text);
PlaneGraph load_pg(const std::string& path);
std::string write_pg(const PlaneGraph& g);

} // namespace flexdp
