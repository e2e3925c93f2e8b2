#pragma once

// JSON documents. Every file carries a top-level "kind": two_groupoid, sset,
// cosimplicial_2gpd, cover or map. Unknown keys are rejected so that typos
// fail loudly; errors name the JSON path of the offending entry.

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "descent.hpp"
#include "fixtures.hpp"

namespace desc2
{

using Json = nlohmann::json;

enum class DocKind
{
    two_groupoid,
    sset,
    cosimplicial_2gpd,
    cover,
    map
};

inline std::string to_string(DocKind k)
{
    switch (k) {
    case DocKind::two_groupoid: return "two_groupoid";
    case DocKind::sset: return "sset";
    case DocKind::cosimplicial_2gpd: return "cosimplicial_2gpd";
    case DocKind::cover: return "cover";
    case DocKind::map: return "map";
    }
    return "?";
}

namespace io_detail
{

/// A JSON value together with its path, for error messages.
struct Node
{
    const Json& j;
    std::string path;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError((path.empty() ? "/" : path) + ": " + what);
    }

    bool has(const char* key) const { return j.is_object() && j.contains(key); }

    Node operator[](const char* key) const
    {
        if (!j.is_object())
            fail("expected an object");
        if (!j.contains(key))
            fail(std::string("missing key \"") + key + "\"");
        return {j.at(key), path + "/" + key};
    }

    Node operator[](std::size_t i) const { return {j.at(i), path + "/" + std::to_string(i)}; }

    std::size_t size() const
    {
        if (!j.is_array())
            fail("expected an array");
        return j.size();
    }

    /// Rejects keys outside the allowed set.
    void only(std::initializer_list<const char*> allowed) const
    {
        if (!j.is_object())
            fail("expected an object");
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!ok.count(it.key()))
                fail("unknown key \"" + it.key() + "\"");
    }

    Id id() const
    {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
            fail("expected a nonnegative integer");
        const auto v = j.get<unsigned long long>();
        if (v >= kNone)
            fail("integer too large");
        return static_cast<Id>(v);
    }

    std::string str() const
    {
        if (!j.is_string())
            fail("expected a string");
        return j.get<std::string>();
    }

    std::vector<Id> ids() const
    {
        std::vector<Id> out;
        for (std::size_t i = 0; i < size(); ++i)
            out.push_back((*this)[i].id());
        return out;
    }

    template <std::size_t N>
    std::array<Id, N> tuple() const
    {
        if (size() != N)
            fail("expected " + std::to_string(N) + " entries");
        std::array<Id, N> out{};
        for (std::size_t i = 0; i < N; ++i)
            out[i] = (*this)[i].id();
        return out;
    }

    std::vector<std::vector<Id>> id_rows() const
    {
        std::vector<std::vector<Id>> out;
        for (std::size_t i = 0; i < size(); ++i)
            out.push_back((*this)[i].ids());
        return out;
    }
};

inline void check_kind(const Node& n, DocKind want, bool required)
{
    if (!n.has("kind")) {
        if (required)
            n.fail("missing key \"kind\"");
        return;
    }
    const auto k = n["kind"].str();
    if (k != to_string(want))
        n.fail("expected kind \"" + to_string(want) + "\", found \"" + k + "\"");
}

inline FiniteGroup group_from(const Node& n)
{
    n.only({"cyclic", "symmetric", "table"});
    if (n.has("cyclic")) {
        const Id k = n["cyclic"].id();
        if (k == 0)
            n.fail("cyclic group of order 0");
        return cyclic_group(k);
    }
    if (n.has("symmetric")) {
        if (n["symmetric"].id() != 3)
            n.fail("only the symmetric group on 3 letters is built in");
        return symmetric_group3();
    }
    FiniteGroup G;
    G.mul = n["table"].id_rows();
    if (G.mul.empty())
        n.fail("empty group table");
    for (const auto& row : G.mul)
        if (row.size() != G.mul.size())
            n.fail("group table is not square");
    for (Id e = 0; e < G.mul.size(); ++e) {
        bool unit = true;
        for (Id g = 0; g < G.mul.size() && unit; ++g)
            unit = G.mul[e][g] == g && G.mul[g][e] == g;
        if (unit) {
            G.identity = e;
            return G;
        }
    }
    n.fail("group table has no identity");
}

inline Json group_to(const FiniteGroup& G)
{
    return Json{{"table", G.mul}};
}

inline std::vector<std::vector<Id>> triples(const std::vector<std::array<Id, 3>>& t)
{
    std::vector<std::vector<Id>> out;
    for (const auto& a : t)
        out.push_back({a[0], a[1], a[2]});
    return out;
}

inline std::vector<std::array<Id, 3>> triples_from(const Node& n)
{
    std::vector<std::array<Id, 3>> out;
    for (std::size_t i = 0; i < n.size(); ++i)
        out.push_back(n[i].tuple<3>());
    return out;
}

} // namespace io_detail

/// Kind of a top-level document.
inline DocKind document_kind(const Json& j)
{
    io_detail::Node n{j, ""};
    const auto k = n["kind"].str();
    for (DocKind d : {DocKind::two_groupoid, DocKind::sset, DocKind::cosimplicial_2gpd, DocKind::cover, DocKind::map})
        if (k == to_string(d))
            return d;
    n["kind"].fail("unknown kind \"" + k + "\"");
}

/// Parses JSON text; syntax errors become ParseError with the byte offset.
inline Json parse_json(std::istream& in, const std::string& name = "input")
{
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(name + ": " + e.what());
    }
}

inline Json parse_json(const std::string& text, const std::string& name = "input")
{
    std::istringstream in(text);
    return parse_json(in, name);
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open");
    return parse_json(in, path);
}

// ---- two_groupoid ----------------------------------------------------------
//
// Either full tables
//   {objects, one_cells: [{id, src, tgt}..], id1, comp1: [[f,g,g∘f]..],
//    two_cells: [{id, src1, tgt1}..], id2, vcomp: [[a,b,b*a]..], hcomp: [[a,b,b∘a]..]}
// or a preset
//   {preset: terminal | delooping | double_delooping | codiscrete |
//            adjoined_object | crossed_module, group: {...}, n: N,
//    crossed_module: {H, G, boundary, action}}.

inline TwoGroupoid two_groupoid_from_json(const Json& j, const std::string& path = "")
{
    using io_detail::Node;
    Node n{j, path};
    io_detail::check_kind(n, DocKind::two_groupoid, path.empty());
    if (n.has("preset")) {
        n.only({"kind", "preset", "group", "n", "crossed_module"});
        const auto p = n["preset"].str();
        if (p == "terminal")
            return TwoGroupoid();
        if (p == "delooping")
            return delooping(io_detail::group_from(n["group"]));
        if (p == "double_delooping")
            return double_delooping(io_detail::group_from(n["group"]));
        if (p == "codiscrete")
            return codiscrete(n["n"].id());
        if (p == "adjoined_object")
            return adjoined_object_fixture();
        if (p == "crossed_module") {
            const auto x = n["crossed_module"];
            x.only({"H", "G", "boundary", "action"});
            CrossedModule X{io_detail::group_from(x["H"]), io_detail::group_from(x["G"]), x["boundary"].ids(),
                            x["action"].id_rows()};
            return crossed_module_2group(X);
        }
        n["preset"].fail("unknown preset \"" + p + "\"");
    }
    n.only({"kind", "objects", "one_cells", "id1", "comp1", "two_cells", "id2", "vcomp", "hcomp"});
    TwoGroupoidTables t;
    t.objects = n["objects"].id();
    // Records carry their own id, which must equal their position.
    auto record = [](const Node& r, std::size_t i, const char* s, const char* e) {
        r.only({"id", s, e});
        if (r["id"].id() != i)
            r["id"].fail("expected id " + std::to_string(i));
        return std::array<Id, 2>{r[s].id(), r[e].id()};
    };
    for (std::size_t i = 0; i < n["one_cells"].size(); ++i) {
        const auto a = record(n["one_cells"][i], i, "src", "tgt");
        t.one_cells.push_back({a[0], a[1]});
    }
    t.id1 = n["id1"].ids();
    t.comp1 = io_detail::triples_from(n["comp1"]);
    for (std::size_t i = 0; i < n["two_cells"].size(); ++i) {
        const auto a = record(n["two_cells"][i], i, "src1", "tgt1");
        t.two_cells.push_back({a[0], a[1]});
    }
    t.id2 = n["id2"].ids();
    t.vcomp = io_detail::triples_from(n["vcomp"]);
    t.hcomp = io_detail::triples_from(n["hcomp"]);
    return TwoGroupoid(std::move(t));
}

inline Json to_json(const TwoGroupoid& G, bool with_kind = true)
{
    const auto& t = G.tables();
    Json j;
    if (with_kind)
        j["kind"] = "two_groupoid";
    j["objects"] = t.objects;
    Json ones = Json::array(), twos = Json::array();
    for (Id i = 0; i < t.one_cells.size(); ++i)
        ones.push_back({{"id", i}, {"src", t.one_cells[i].src}, {"tgt", t.one_cells[i].tgt}});
    for (Id i = 0; i < t.two_cells.size(); ++i)
        twos.push_back({{"id", i}, {"src1", t.two_cells[i].src1}, {"tgt1", t.two_cells[i].tgt1}});
    j["one_cells"] = ones;
    j["id1"] = t.id1;
    j["comp1"] = io_detail::triples(t.comp1);
    j["two_cells"] = twos;
    j["id2"] = t.id2;
    j["vcomp"] = io_detail::triples(t.vcomp);
    j["hcomp"] = io_detail::triples(t.hcomp);
    return j;
}

// ---- functors --------------------------------------------------------------

inline TwoFunctor functor_from_json(const Json& j, const std::string& path)
{
    io_detail::Node n{j, path};
    n.only({"obj", "one", "two"});
    return TwoFunctor{n["obj"].ids(), n["one"].ids(), n["two"].ids()};
}

inline Json to_json(const TwoFunctor& F) { return Json{{"obj", F.obj_map}, {"one", F.one_map}, {"two", F.two_map}}; }

// ---- sset ------------------------------------------------------------------
//
// {level0..level3: counts, faces: [[d_0..d_1 of level 1], [.. level 2], [.. level 3]],
//  degens: [[s_0 of level 0], [s_0,s_1 of level 1], [s_0..s_2 of level 2]]}

inline FiniteCoskSSet sset_from_json(const Json& j, const std::string& path = "")
{
    using io_detail::Node;
    Node n{j, path};
    io_detail::check_kind(n, DocKind::sset, path.empty());
    n.only({"kind", "level0", "level1", "level2", "level3", "faces", "degens"});
    std::array<std::size_t, 4> counts{};
    for (int k = 0; k <= 3; ++k)
        counts[k] = n[("level" + std::to_string(k)).c_str()].id();
    std::array<std::vector<std::vector<Id>>, 4> faces;
    std::array<std::vector<std::vector<Id>>, 3> degens;
    const auto f = n["faces"];
    if (f.size() != 3)
        f.fail("expected face maps for levels 1, 2, 3");
    for (int k = 1; k <= 3; ++k)
        faces[k] = f[k - 1].id_rows();
    const auto d = n["degens"];
    if (d.size() != 3)
        d.fail("expected degeneracy maps for levels 0, 1, 2");
    for (int k = 0; k <= 2; ++k)
        degens[k] = d[k].id_rows();
    return FiniteCoskSSet(counts, std::move(faces), std::move(degens));
}

inline Json to_json(const FiniteCoskSSet& X, bool with_kind = true)
{
    Json j;
    if (with_kind)
        j["kind"] = "sset";
    for (int k = 0; k <= 3; ++k)
        j["level" + std::to_string(k)] = X.count(k);
    j["faces"] = {X.faces()[1], X.faces()[2], X.faces()[3]};
    j["degens"] = {X.degens()[0], X.degens()[1], X.degens()[2]};
    return j;
}

// ---- cover -----------------------------------------------------------------
//
// {vertices: ["a", "b", ..], maximal: [["a","b"], ..]}; the plain text form
// lists one maximal simplex per line as space-separated vertex names.

namespace io_detail
{

inline CoverComplex cover_from_names(const std::vector<std::string>& vertices,
                                     const std::vector<std::vector<std::string>>& maximal)
{
    std::map<std::string, Id> at;
    for (const auto& v : vertices)
        if (!at.emplace(v, static_cast<Id>(at.size())).second)
            throw ParseError("cover: vertex \"" + v + "\" listed twice");
    std::vector<std::vector<Id>> simplices;
    for (const auto& s : maximal) {
        simplices.emplace_back();
        for (const auto& v : s) {
            auto it = at.find(v);
            if (it == at.end())
                throw ParseError("cover: unknown vertex \"" + v + "\"");
            simplices.back().push_back(it->second);
        }
    }
    return CoverComplex::from_maximal(vertices.size(), simplices, vertices);
}

} // namespace io_detail

inline CoverComplex cover_from_json(const Json& j, const std::string& path = "")
{
    using io_detail::Node;
    Node n{j, path};
    io_detail::check_kind(n, DocKind::cover, path.empty());
    n.only({"kind", "vertices", "maximal"});
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < n["vertices"].size(); ++i)
        vertices.push_back(n["vertices"][i].str());
    std::vector<std::vector<std::string>> maximal;
    for (std::size_t i = 0; i < n["maximal"].size(); ++i) {
        maximal.emplace_back();
        for (std::size_t k = 0; k < n["maximal"][i].size(); ++k)
            maximal.back().push_back(n["maximal"][i][k].str());
    }
    try {
        return io_detail::cover_from_names(vertices, maximal);
    } catch (const ParseError& e) {
        n.fail(e.what());
    }
}

/// Vertices are named in order of first appearance; blank lines and lines
/// starting with '#' are skipped.
inline CoverComplex cover_from_text(std::istream& in)
{
    std::vector<std::string> vertices;
    std::set<std::string> seen;
    std::vector<std::vector<std::string>> maximal;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> s;
        std::string v;
        while (ls >> v) {
            if (s.empty() && v[0] == '#')
                break;
            s.push_back(v);
            if (seen.insert(v).second)
                vertices.push_back(v);
        }
        if (!s.empty())
            maximal.push_back(s);
    }
    if (maximal.empty())
        throw ParseError("cover: no simplices");
    return io_detail::cover_from_names(vertices, maximal);
}

inline Json to_json(const CoverComplex& K, bool with_kind = true)
{
    Json j;
    if (with_kind)
        j["kind"] = "cover";
    j["vertices"] = K.names;
    // Maximal simplices: those not contained in a larger one.
    Json maximal = Json::array();
    for (const auto& s : K.simplices) {
        bool top = true;
        for (const auto& t : K.simplices)
            if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                top = false;
                break;
            }
        if (!top)
            continue;
        Json names = Json::array();
        for (Id v : s)
            names.push_back(K.names[v]);
        maximal.push_back(names);
    }
    j["maximal"] = maximal;
    return j;
}

// ---- cosimplicial_2gpd -----------------------------------------------------
//
// One of
//   {constant: <two_groupoid>}
//   {cech: {cover: <cover>, coefficients: <two_groupoid>}}
//   {levels: [<two_groupoid> x4], cofaces: [[<functor> x(n+1)] for n = 1..3]}
//   {bases: [<two_groupoid>..], maps: [{source, target, functor}..],
//    coord_base: [[..] x4], cofaces: [[{source: [..], map: [..]} x(n+1)] for n = 1..3],
//    labels: optional [[[..]..] x4]}

inline RestrictedCosimplicial2Groupoid cosimplicial_from_json(const Json& j, const std::string& path = "")
{
    using io_detail::Node;
    Node n{j, path};
    io_detail::check_kind(n, DocKind::cosimplicial_2gpd, path.empty());
    if (n.has("constant")) {
        n.only({"kind", "constant"});
        return constant_cosimplicial(two_groupoid_from_json(n["constant"].j, n["constant"].path));
    }
    if (n.has("cech")) {
        n.only({"kind", "cech"});
        const auto c = n["cech"];
        c.only({"cover", "coefficients"});
        return cech_cosimplicial(cover_from_json(c["cover"].j, c["cover"].path),
                                 two_groupoid_from_json(c["coefficients"].j, c["coefficients"].path));
    }
    if (n.has("levels")) {
        n.only({"kind", "levels", "cofaces"});
        const auto l = n["levels"];
        if (l.size() != 4)
            l.fail("expected 2-groupoids for degrees 0..3");
        std::array<TwoGroupoid, 4> levels;
        for (int d = 0; d <= 3; ++d)
            levels[d] = two_groupoid_from_json(l[d].j, l[d].path);
        const auto cf = n["cofaces"];
        if (cf.size() != 3)
            cf.fail("expected cofaces into degrees 1, 2, 3");
        std::array<std::vector<TwoFunctor>, 4> cofaces;
        for (int d = 1; d <= 3; ++d) {
            const auto level = cf[d - 1];
            if (level.size() != static_cast<std::size_t>(d + 1))
                level.fail("degree " + std::to_string(d) + " needs " + std::to_string(d + 1) + " cofaces");
            for (int i = 0; i <= d; ++i)
                cofaces[d].push_back(functor_from_json(level[i].j, level[i].path));
        }
        auto C = explicit_cosimplicial(std::move(levels), cofaces);
        try {
            detail::check_coordinate_structure(C);
        } catch (const StructuralError& e) {
            n.fail(e.what());
        }
        return C;
    }
    n.only({"kind", "bases", "maps", "coord_base", "cofaces", "labels"});
    RestrictedCosimplicial2Groupoid C;
    for (std::size_t b = 0; b < n["bases"].size(); ++b)
        C.bases.push_back(two_groupoid_from_json(n["bases"][b].j, n["bases"][b].path));
    for (std::size_t m = 0; m < n["maps"].size(); ++m) {
        const auto e = n["maps"][m];
        e.only({"source", "target", "functor"});
        C.map_ends.push_back({e["source"].id(), e["target"].id()});
        C.maps.push_back(functor_from_json(e["functor"].j, e["functor"].path));
    }
    const auto cb = n["coord_base"];
    if (cb.size() != 4)
        cb.fail("expected coordinates for degrees 0..3");
    for (int d = 0; d <= 3; ++d)
        C.coord_base[d] = cb[d].ids();
    const auto cf = n["cofaces"];
    if (cf.size() != 3)
        cf.fail("expected cofaces into degrees 1, 2, 3");
    for (int d = 1; d <= 3; ++d) {
        const auto level = cf[d - 1];
        if (level.size() != static_cast<std::size_t>(d + 1))
            level.fail("degree " + std::to_string(d) + " needs " + std::to_string(d + 1) + " cofaces");
        for (int i = 0; i <= d; ++i) {
            const auto e = level[i];
            e.only({"source", "map"});
            C.cofaces[d].push_back({e["source"].ids(), e["map"].ids()});
        }
    }
    if (n.has("labels")) {
        const auto l = n["labels"];
        if (l.size() != 4)
            l.fail("expected labels for degrees 0..3");
        for (int d = 0; d <= 3; ++d)
            C.labels[d] = l[d].id_rows();
    }
    try {
        detail::check_coordinate_structure(C);
    } catch (const StructuralError& e) {
        n.fail(e.what());
    }
    return C;
}

inline Json to_json(const RestrictedCosimplicial2Groupoid& C, bool with_kind = true)
{
    Json j;
    if (with_kind)
        j["kind"] = "cosimplicial_2gpd";
    j["bases"] = Json::array();
    for (const auto& B : C.bases)
        j["bases"].push_back(to_json(B, false));
    j["maps"] = Json::array();
    for (Id m = 0; m < C.maps.size(); ++m)
        j["maps"].push_back({{"source", C.map_ends[m].first}, {"target", C.map_ends[m].second},
                             {"functor", to_json(C.maps[m])}});
    j["coord_base"] = C.coord_base;
    j["cofaces"] = Json::array();
    for (int d = 1; d <= 3; ++d) {
        Json level = Json::array();
        for (const auto& c : C.cofaces[d])
            level.push_back({{"source", c.source}, {"map", c.map}});
        j["cofaces"].push_back(level);
    }
    bool labelled = false;
    for (const auto& l : C.labels)
        labelled = labelled || !l.empty();
    if (labelled)
        j["labels"] = C.labels;
    return j;
}

// ---- map -------------------------------------------------------------------
//
// A level-wise map C → D. One of
//   {preset: "identity"}                      C = D
//   {preset: "collapse"}                      every base of D terminal
//   {coefficients: [<functor> per base]}      same coordinates on both sides
//   {functors: [{source, target, functor}..], source: [[..] x4], map: [[..] x4]}

inline LevelwiseMap levelwise_map_from_json(const Json& j, const RestrictedCosimplicial2Groupoid& C,
                                            const RestrictedCosimplicial2Groupoid& D, const std::string& path = "")
{
    using io_detail::Node;
    Node n{j, path};
    io_detail::check_kind(n, DocKind::map, path.empty());
    if (n.has("preset")) {
        n.only({"kind", "preset"});
        const auto p = n["preset"].str();
        if (p == "identity")
            return identity_levelwise_map(C);
        if (p == "collapse") {
            std::vector<TwoFunctor> phi;
            for (const auto& B : C.bases)
                phi.push_back(collapse_functor(B));
            return coefficient_map(C, D, phi);
        }
        n["preset"].fail("unknown preset \"" + p + "\"");
    }
    if (n.has("coefficients")) {
        n.only({"kind", "coefficients"});
        std::vector<TwoFunctor> phi;
        for (std::size_t b = 0; b < n["coefficients"].size(); ++b)
            phi.push_back(functor_from_json(n["coefficients"][b].j, n["coefficients"][b].path));
        return coefficient_map(C, D, phi);
    }
    n.only({"kind", "functors", "source", "map"});
    LevelwiseMap F;
    for (std::size_t m = 0; m < n["functors"].size(); ++m) {
        const auto e = n["functors"][m];
        e.only({"source", "target", "functor"});
        F.map_ends.push_back({e["source"].id(), e["target"].id()});
        F.maps.push_back(functor_from_json(e["functor"].j, e["functor"].path));
    }
    for (const char* key : {"source", "map"}) {
        const auto a = n[key];
        if (a.size() != 4)
            a.fail("expected entries for degrees 0..3");
        for (int d = 0; d <= 3; ++d)
            (key[0] == 's' ? F.source : F.map)[d] = a[d].ids();
    }
    return F;
}

inline Json to_json(const LevelwiseMap& F)
{
    Json j;
    j["kind"] = "map";
    j["functors"] = Json::array();
    for (Id m = 0; m < F.maps.size(); ++m)
        j["functors"].push_back({{"source", F.map_ends[m].first}, {"target", F.map_ends[m].second},
                                 {"functor", to_json(F.maps[m])}});
    j["source"] = F.source;
    j["map"] = F.map;
    return j;
}

} // namespace desc2
