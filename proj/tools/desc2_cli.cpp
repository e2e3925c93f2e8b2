// desc2_cli: validate documents, print nerves, and run the descent
// computations. Exit status: 0 pass, 1 semantic failure, 2 parse failure,
// 3 budget exhausted.

#include <desc2/desc2.hpp>
#include <desc2/io.hpp>

#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace desc2;

namespace
{

enum Exit
{
    kPass = 0,
    kSemantic = 1,
    kParse = 2,
    kResource = 3
};

struct Config
{
    std::uint64_t budget = Budget::kDefault;
    std::string format = "text";
    std::string out;
    std::vector<int> dims{0, 1};
    bool tables = false;
    std::string source, target;
};

// Output goes to --out when given, stdout otherwise.
class Sink
{
public:
    explicit Sink(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw ParseError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string cells(const CellVec& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::string datum_text(const DescentDatum& d)
{
    return "x=" + cells(d.x) + " g=" + cells(d.g) + " a=" + cells(d.a);
}

Json datum_json(const DescentDatum& d) { return Json{{"x", d.x}, {"g", d.g}, {"a", d.a}}; }

Json report_json(const ValidationReport& r)
{
    Json v = Json::array();
    for (const auto& x : r.violations())
        v.push_back({{"family", x.family}, {"detail", x.detail}, {"witness", x.witness}});
    return Json{{"kind", "validation"}, {"ok", r.ok()}, {"violations", v}};
}

bool is_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open");
    char c = 0;
    while (in.get(c) && std::isspace(static_cast<unsigned char>(c))) {
    }
    return c == '{';
}

CoverComplex load_cover(const std::string& path)
{
    if (is_json_file(path))
        return cover_from_json(read_json_file(path));
    std::ifstream in(path);
    return cover_from_text(in);
}

RestrictedCosimplicial2Groupoid load_cosimplicial(const std::string& path)
{
    return cosimplicial_from_json(read_json_file(path));
}

int emit_report(const Config& cfg, const ValidationReport& r)
{
    Sink sink(cfg.out);
    if (cfg.format == "doc")
        sink.os() << report_json(r).dump(2) << "\n";
    else
        sink.os() << r;
    return r.ok() ? kPass : kSemantic;
}

int cmd_validate(const Config& cfg, const std::string& path)
{
    const auto j = read_json_file(path);
    ValidationReport r;
    switch (document_kind(j)) {
    case DocKind::two_groupoid:
        r = validate_two_groupoid(two_groupoid_from_json(j));
        break;
    case DocKind::sset:
        r = validate_sset(sset_from_json(j));
        break;
    case DocKind::cosimplicial_2gpd: {
        const auto C = cosimplicial_from_json(j);
        for (const auto& B : C.bases)
            r.merge(validate_two_groupoid(B));
        for (Id m = 0; m < C.maps.size(); ++m)
            r.merge(validate_functor(C.maps[m], C.bases[C.map_ends[m].first], C.bases[C.map_ends[m].second]));
        if (r.ok())
            r.merge(validate_cosimplicial(C));
        break;
    }
    case DocKind::cover:
        r = cover_from_json(j).validate();
        break;
    case DocKind::map: {
        if (cfg.source.empty() || cfg.target.empty())
            throw ParseError(path + ": a map document needs --source and --target");
        const auto C = load_cosimplicial(cfg.source);
        const auto D = load_cosimplicial(cfg.target);
        r = validate_levelwise_map(levelwise_map_from_json(j, C, D), C, D);
        break;
    }
    }
    return emit_report(cfg, r);
}

int cmd_nerve(const Config& cfg, const std::string& path)
{
    const auto G = two_groupoid_from_json(read_json_file(path));
    Budget b(cfg.budget, "nerve");
    const auto N = two_nerve(G, b);
    Sink sink(cfg.out);
    if (cfg.format == "doc")
        sink.os() << to_json(N.sset).dump() << "\n";
    else
        write_sset_text(sink.os(), N.sset, cfg.tables);
    return kPass;
}

int cmd_cech(const Config& cfg, const std::string& cover, const std::string& coefficients)
{
    const auto K = load_cover(cover);
    const auto T = read_json_file(coefficients);
    two_groupoid_from_json(T);  // fail early on a bad coefficient document
    Json c = T;
    c.erase("kind");
    const Json doc{{"kind", "cosimplicial_2gpd"}, {"cech", {{"cover", to_json(K, false)}, {"coefficients", c}}}};
    Sink sink(cfg.out);
    sink.os() << doc.dump(2) << "\n";
    return kPass;
}

int cmd_enumerate(const Config& cfg, const std::string& path)
{
    const auto C = load_cosimplicial(path);
    Budget b(cfg.budget, "descent data");
    const auto data = enumerate_descent_data(C, b);
    Sink sink(cfg.out);
    if (cfg.format == "doc") {
        Json d = Json::array();
        for (const auto& x : data)
            d.push_back(datum_json(x));
        sink.os() << Json{{"kind", "descent_data"}, {"data", d}}.dump() << "\n";
        return kPass;
    }
    sink.os() << data.size() << (data.size() == 1 ? " datum" : " data") << "\n";
    for (std::size_t i = 0; i < data.size(); ++i)
        sink.os() << "datum " << i << " " << datum_text(data[i]) << "\n";
    return kPass;
}

int cmd_classes(const Config& cfg, const std::string& path)
{
    const auto C = load_cosimplicial(path);
    Budget b(cfg.budget, "gauge classes");
    const auto G = gauge_classes(C, b);
    Sink sink(cfg.out);
    const auto& P = G.partition;
    if (cfg.format == "doc") {
        Json d = Json::array();
        for (const auto& x : G.data)
            d.push_back(datum_json(x));
        sink.os() << Json{{"kind", "gauge_classes"}, {"data", d}, {"classes", P.blocks}}.dump() << "\n";
        return kPass;
    }
    sink.os() << G.data.size() << (G.data.size() == 1 ? " datum, " : " data, ") << P.size()
              << (P.size() == 1 ? " class" : " classes") << "\n";
    for (Id k = 0; k < P.size(); ++k)
        sink.os() << "class " << k << " size " << P.blocks[k].size() << " representative "
                  << datum_text(G.data[P.blocks[k].front()]) << "\n";
    for (Id i = 0; i < G.data.size(); ++i)
        sink.os() << "datum " << i << " class " << P.block_of[i] << "\n";
    return kPass;
}

int cmd_compare(const Config& cfg, const std::string& path)
{
    const auto C = load_cosimplicial(path);
    Budget b(cfg.budget, "nerve/Tot comparison");
    const auto r = compare_nerve_tot(C, cfg.dims, b);
    Sink sink(cfg.out);
    if (cfg.format == "doc") {
        Json d = Json::array();
        for (const auto& x : r.degrees)
            d.push_back({{"k", x.k},
                         {"nerve_cells", x.nerve_cells},
                         {"tot_cells", x.tot_cells},
                         {"complete", x.complete},
                         {"bijection", x.bijection},
                         {"detail", x.detail}});
        sink.os() << Json{{"kind", "nerve_tot_comparison"}, {"ok", r.ok}, {"degrees", d}}.dump(2) << "\n";
    } else {
        for (const auto& x : r.degrees) {
            sink.os() << "k=" << x.k << " nerve " << x.nerve_cells << " tot " << x.tot_cells << " "
                      << (x.bijection ? "bijection" : "no bijection");
            if (!x.detail.empty())
                sink.os() << " (" << x.detail << ")";
            sink.os() << "\n";
        }
        sink.os() << (r.ok ? "pass" : "fail") << "\n";
    }
    return r.ok ? kPass : kSemantic;
}

int cmd_invariance(const Config& cfg, const std::string& source, const std::string& target, const std::string& map)
{
    const auto C = load_cosimplicial(source);
    const auto D = load_cosimplicial(target);
    const auto F = levelwise_map_from_json(read_json_file(map), C, D);
    Sink sink(cfg.out);
    const auto v = validate_levelwise_map(F, C, D);
    if (!v.ok()) {
        sink.os() << "map does not commute with cofaces\n" << v;
        return kSemantic;
    }
    Budget b(cfg.budget, "invariance");
    const auto r = check_invariance(F, C, D, b);
    if (cfg.format == "doc") {
        sink.os() << Json{{"kind", "invariance"},
                          {"levelwise_recognized", r.levelwise.recognized},
                          {"levelwise_equivalence", r.levelwise.equivalence},
                          {"detail", r.levelwise.detail},
                          {"classes_source", r.classes_source},
                          {"classes_target", r.classes_target},
                          {"class_map", r.class_map},
                          {"bijection", r.bijection},
                          {"asserted", r.asserted()}}
                         .dump(2)
                  << "\n";
        return r.asserted() ? kPass : kSemantic;
    }
    if (!r.levelwise.equivalence) {
        sink.os() << (r.levelwise.recognized ? "not a weak equivalence" : "not recognized as a weak equivalence")
                  << "; invariance not asserted";
        if (!r.levelwise.detail.empty())
            sink.os() << " (" << r.levelwise.detail << ")";
        sink.os() << "\n";
        return kSemantic;
    }
    sink.os() << "level-wise weak equivalence\n"
              << "classes " << r.classes_source << " -> " << r.classes_target << "\n";
    for (Id k = 0; k < r.class_map.size(); ++k)
        sink.os() << "class " << k << " -> " << r.class_map[k] << "\n";
    sink.os() << (r.bijection ? "bijection" : "not a bijection") << "\n";
    return r.bijection ? kPass : kSemantic;
}

std::uint64_t default_budget()
{
    const char* env = std::getenv("DESC2_BUDGET");
    if (!env || !*env)
        return Budget::kDefault;
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (*end || v == 0)
        throw ParseError(std::string("DESC2_BUDGET must be a positive integer, got \"") + env + "\"");
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    Config cfg;
    try {
        cfg.budget = default_budget();
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    }

    CLI::App app{"Descent data of restricted cosimplicial 2-groupoids"};
    app.require_subcommand(1);
    app.add_option("--budget", cfg.budget, "enumeration node budget (default $DESC2_BUDGET or 10^7)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "text or doc")->check(CLI::IsMember({"text", "doc"}));
    app.add_option("--out", cfg.out, "write the report here instead of stdout");

    std::string path, path2, path3;
    std::function<int()> run;

    auto* validate = app.add_subcommand("validate", "validate a document of any kind");
    validate->add_option("path", path)->required();
    validate->add_option("--source", cfg.source, "source cosimplicial document (map documents)");
    validate->add_option("--target", cfg.target, "target cosimplicial document (map documents)");
    validate->callback([&] { run = [&] { return cmd_validate(cfg, path); }; });

    auto* nerve = app.add_subcommand("nerve", "level counts of the 2-nerve of a 2-groupoid");
    nerve->add_option("path", path)->required();
    nerve->add_flag("--tables", cfg.tables, "also print face tables");
    nerve->callback([&] { run = [&] { return cmd_nerve(cfg, path); }; });

    auto* cech = app.add_subcommand("cech", "Čech object of a cover with constant coefficients");
    cech->add_option("cover", path, "cover (text or JSON)")->required();
    cech->add_option("coefficients", path2, "2-groupoid document")->required();
    cech->callback([&] { run = [&] { return cmd_cech(cfg, path, path2); }; });

    auto* desc = app.add_subcommand("desc", "descent data and gauge classes");
    desc->require_subcommand(1);
    auto* enumerate = desc->add_subcommand("enumerate", "list descent data");
    enumerate->add_option("path", path)->required();
    enumerate->callback([&] { run = [&] { return cmd_enumerate(cfg, path); }; });
    auto* classes = desc->add_subcommand("classes", "gauge classes of descent data");
    classes->add_option("path", path)->required();
    classes->callback([&] { run = [&] { return cmd_classes(cfg, path); }; });
    auto* compare = desc->add_subcommand("compare", "compare the nerve of Desc with Tot_r");
    compare->add_option("path", path)->required();
    compare->add_option("--dims", cfg.dims, "degrees to compare, e.g. 0,1,2")
        ->delimiter(',')
        ->check(CLI::Range(0, 2));
    compare->callback([&] { run = [&] { return cmd_compare(cfg, path); }; });
    auto* inv = desc->add_subcommand("invariance", "gauge classes under a level-wise map");
    inv->add_option("source", path)->required();
    inv->add_option("target", path2)->required();
    inv->add_option("map", path3)->required();
    inv->callback([&] { run = [&] { return cmd_invariance(cfg, path, path2, path3); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kParse;
    }
    try {
        if (cfg.dims.empty())
            throw ParseError("--dims needs at least one degree");
        return run();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ResourceError& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSemantic;
    }
}
