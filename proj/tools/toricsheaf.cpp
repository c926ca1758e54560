// Command-line front end: schema-validated JSON in, deterministic JSON/DOT
// out, with independent-method cross-checking surfaced as a hard error.
//
// Exit codes: 0 success, 1 schema error, 2 mathematical precondition
// violation, 3 independent methods disagree.

#include "toric/errors.hpp"
#include "toric/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace toric;

namespace {

Json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

void emit(const Json& doc, const std::string& out_path) {
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw SchemaError("cannot write " + out_path);
        out << text;
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw SchemaError("cannot write " + out_path);
        out << text;
    }
}

ZVec parse_degree(const std::string& s, int n) {
    ZVec v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw SchemaError("malformed degree component: " + item);
        }
    }
    if (static_cast<int>(v.size()) != n)
        throw SchemaError("degree needs exactly " + std::to_string(n) + " components");
    return v;
}

std::optional<DegreeBox> parse_box(const std::string& s, int n) {
    if (s.empty() || s == "auto") return std::nullopt;
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw SchemaError("box format is lo1,lo2:hi1,hi2 (or \"auto\")");
    DegreeBox box{parse_degree(s.substr(0, colon), n),
                  parse_degree(s.substr(colon + 1), n)};
    for (std::size_t i = 0; i < box.lo.size(); ++i)
        if (box.lo[i] > box.hi[i]) throw SchemaError("box: lo exceeds hi");
    return box;
}

Method method_from_name(const std::string& name) {
    if (name == "cech") return Method::Cech;
    if (name == "polyhedral") return Method::Polyhedral;
    if (name == "interior") return Method::PolyhedralInterior;
    throw SchemaError("unknown method " + name);
}

// Degree-by-degree diff of two tables; empty result means agreement.
std::string table_diff(const GradedTable& a, const GradedTable& b) {
    std::ostringstream os;
    for (const auto& [degree, dims] : a.entries) {
        auto it = b.entries.find(degree);
        std::vector<int> other = it == b.entries.end() ? std::vector<int>{} : it->second;
        if (dims != other) {
            os << "degree (";
            for (std::size_t i = 0; i < degree.size(); ++i)
                os << (i ? "," : "") << degree[i];
            os << "): " << a.method << " = [";
            for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
            os << "], " << b.method << " = [";
            for (std::size_t i = 0; i < other.size(); ++i)
                os << (i ? "," : "") << other[i];
            os << "]\n";
        }
    }
    return os.str();
}

std::string render_table(const GradedTable& table, bool verbose) {
    std::ostringstream os;
    os << "method " << table.method << ", twist " << table.twist << "\n";
    for (const auto& [degree, dims] : table.entries) {
        bool zero = true;
        for (int d : dims) zero = zero && d == 0;
        if (zero && !verbose) continue;
        os << "(";
        for (std::size_t i = 0; i < degree.size(); ++i)
            os << (i ? "," : "") << degree[i];
        os << ")";
        for (std::size_t l = 0; l < dims.size(); ++l)
            os << "  h" << l << "=" << dims[l];
        os << "\n";
    }
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"toricsheaf: exact cohomology of decorated toric sheaves"};
    app.require_subcommand(1);

    std::string sheaf_path, out_path, method_name = "cech", box_spec = "auto";
    std::string degree_spec, dminus_path, dplus_path, hasse_path;
    bool verbose = false, interior_check = false, human = false;
    int ray_index = -1;

    auto add_sheaf = [&](CLI::App* cmd) {
        cmd->add_option("--sheaf", sheaf_path, "sheaf document (JSON)")->required();
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("-o,--out", out_path, "output file (default stdout)");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a sheaf document");
    add_sheaf(validate_cmd);

    CLI::App* cohom = app.add_subcommand("cohomology", "graded cohomology table");
    add_sheaf(cohom);
    add_out(cohom);
    cohom->add_option("--method", method_name, "cech | polyhedral | interior | both");
    cohom->add_option("--box", box_spec, "auto or lo1,lo2:hi1,hi2");
    cohom->add_flag("--interior-check", interior_check,
                    "also verify against the interior variant");
    cohom->add_flag("--verbose", verbose, "keep zero rows");
    cohom->add_flag("--table", human, "human-readable table instead of JSON");

    CLI::App* euler_cmd = app.add_subcommand("euler", "Euler characteristic");
    add_sheaf(euler_cmd);
    add_out(euler_cmd);

    CLI::App* eq_euler = app.add_subcommand("equivariant-euler",
                                            "per-degree Euler characteristics");
    add_sheaf(eq_euler);
    add_out(eq_euler);
    eq_euler->add_option("--box", box_spec, "auto or lo1,lo2:hi1,hi2");

    CLI::App* sections_cmd = app.add_subcommand("sections", "degree-m global sections");
    add_sheaf(sections_cmd);
    add_out(sections_cmd);
    sections_cmd->add_option("--degree", degree_spec, "m as a1,a2")->required();

    CLI::App* klyachko_cmd = app.add_subcommand("klyachko", "filtration dimensions");
    add_sheaf(klyachko_cmd);
    add_out(klyachko_cmd);
    klyachko_cmd->add_option("--ray", ray_index, "restrict to one ray index");

    CLI::App* ext_cmd = app.add_subcommand("extension", "universal extension");
    ext_cmd->add_option("--dminus", dminus_path, "divisor document")->required();
    ext_cmd->add_option("--dplus", dplus_path, "divisor document")->required();
    ext_cmd->add_option("--hasse", hasse_path, "also write the Hasse diagram DOT");
    add_out(ext_cmd);

    CLI::App* hasse_cmd = app.add_subcommand("export-hasse", "stratification DOT");
    add_sheaf(hasse_cmd);
    add_out(hasse_cmd);

    CLI::App* e1_cmd = app.add_subcommand("export-e1", "first-page dimensions");
    add_sheaf(e1_cmd);
    add_out(e1_cmd);
    e1_cmd->add_option("--degree", degree_spec, "m as a1,a2")->required();

    CLI::App* cells_cmd = app.add_subcommand("export-cells", "polyhedral cell complex");
    add_sheaf(cells_cmd);
    add_out(cells_cmd);
    cells_cmd->add_option("--degree", degree_spec, "m as a1,a2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (validate_cmd->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        std::vector<std::string> problems = validate(sheaf.decoration);
        if (!problems.empty()) {
            for (const std::string& p : problems) std::cerr << p << "\n";
            throw MathError("NotAdmissible", "sheaf fails validation");
        }
        std::cout << "ok: rank " << sheaf.decoration.rank() << ", "
                  << sheaf.decoration.strat.size() << " strata, fan hash "
                  << fan_hash(*sheaf.fan) << "\n";
        return 0;
    }

    if (cohom->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        std::optional<DegreeBox> box = parse_box(box_spec, sheaf.fan->n);
        GradedTable table;
        if (method_name == "both") {
            GradedTable cech = graded_table(sheaf.decoration, Method::Cech, box);
            GradedTable poly = graded_table(sheaf.decoration, Method::Polyhedral, box);
            std::string diff = table_diff(cech, poly);
            if (!diff.empty()) {
                std::cerr << diff;
                throw MismatchError("cech and polyhedral tables disagree");
            }
            table = std::move(poly);
            table.method = "both";
        } else {
            table = graded_table(sheaf.decoration, method_from_name(method_name), box);
        }
        if (interior_check) {
            GradedTable inner =
                graded_table(sheaf.decoration, Method::PolyhedralInterior, box);
            std::string diff = table_diff(table, inner);
            if (!diff.empty()) {
                std::cerr << diff;
                throw MismatchError("interior variant disagrees");
            }
        }
        if (human) {
            emit_text(render_table(table, verbose), out_path);
        } else {
            emit(document("cohomology", table_to_json(table, verbose), *sheaf.fan),
                 out_path);
        }
        return 0;
    }

    if (euler_cmd->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        DegreeBox box = degree_support_box(sheaf.decoration);
        long long total = 0;
        for (const auto& [degree, chi] : euler_equivariant(sheaf.decoration, box))
            total += chi;
        Json body;
        body["chi"] = total;
        body["chi_deg0"] = euler_deg0(sheaf.decoration);
        body["box"] = box_to_json(box);
        emit(document("euler", std::move(body), *sheaf.fan), out_path);
        return 0;
    }

    if (eq_euler->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        std::optional<DegreeBox> box = parse_box(box_spec, sheaf.fan->n);
        DegreeBox used = box ? *box : degree_support_box(sheaf.decoration);
        Json entries = Json::array();
        for (const auto& [degree, chi] : euler_equivariant(sheaf.decoration, used)) {
            Json row;
            row["degree"] = Json::array();
            for (long long x : degree) row["degree"].push_back(x);
            row["chi"] = chi;
            entries.push_back(std::move(row));
        }
        Json body;
        body["box"] = box_to_json(used);
        body["entries"] = std::move(entries);
        emit(document("equivariant-euler", std::move(body), *sheaf.fan), out_path);
        return 0;
    }

    if (sections_cmd->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        ZVec m = parse_degree(degree_spec, sheaf.fan->n);
        QMat basis = global_sections(sheaf.decoration, m);
        Json body;
        body["degree"] = Json::array();
        for (long long x : m) body["degree"].push_back(x);
        body["dim"] = static_cast<int>(basis.size());
        body["basis"] = matrix_to_json(basis);
        emit(document("sections", std::move(body), *sheaf.fan), out_path);
        return 0;
    }

    if (klyachko_cmd->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        const WeilDecoration& dec = sheaf.decoration;
        Json rays = Json::array();
        for (std::size_t r = 0; r < sheaf.fan->rays.size(); ++r) {
            if (ray_index >= 0 && static_cast<std::size_t>(ray_index) != r) continue;
            long long lo = 0, hi = 0;
            for (std::size_t s = 1; s < dec.divisor.size(); ++s) {
                long long c = (*dec.divisor[s])[r];
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            Json levels = Json::array();
            for (long long l = lo; l <= hi + 1; ++l) {
                Json entry;
                entry["level"] = l;
                entry["dim"] =
                    static_cast<int>(klyachko_filtration(dec, static_cast<int>(r), l).size());
                levels.push_back(std::move(entry));
            }
            Json row;
            row["ray"] = Json::array();
            for (long long x : sheaf.fan->rays[r]) row["ray"].push_back(x);
            row["levels"] = std::move(levels);
            rays.push_back(std::move(row));
        }
        Json body;
        body["filtrations"] = std::move(rays);
        emit(document("klyachko", std::move(body), *sheaf.fan), out_path);
        return 0;
    }

    if (ext_cmd->parsed()) {
        LoadedDivisor dm = divisor_doc_from_json(read_document(dminus_path));
        LoadedDivisor dp = divisor_doc_from_json(read_document(dplus_path));
        if (fan_hash(*dm.fan) != fan_hash(*dp.fan))
            throw SchemaError("divisor documents live on different varieties");
        // rebind onto one fan instance
        ToricDivisor dplus{dm.fan.get(), dp.divisor.a};
        ExtensionResult res = universal_extension(dm.divisor, dplus);
        if (!hasse_path.empty())
            emit_text(hasse_dot(res.decoration), hasse_path);
        emit(document("extension", extension_to_json(res), *dm.fan), out_path);
        return 0;
    }

    if (hasse_cmd->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        emit_text(hasse_dot(sheaf.decoration), out_path);
        return 0;
    }

    if (e1_cmd->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        ZVec m = parse_degree(degree_spec, sheaf.fan->n);
        SpectralE1Report rep = spectral_E1(sheaf.decoration, m);
        Json body;
        body["degree"] = Json::array();
        for (long long x : m) body["degree"].push_back(x);
        body["entries"] = e1_to_json(rep);
        emit(document("e1", std::move(body), *sheaf.fan), out_path);
        return 0;
    }

    if (cells_cmd->parsed()) {
        LoadedSheaf sheaf = sheaf_from_json(read_document(sheaf_path));
        const Fan& fan = *sheaf.fan;
        ZVec m = parse_degree(degree_spec, fan.n);
        // same window the polyhedral engine uses: smallest k >= 1 making the
        // twisted decoration ample
        long long k = minimal_twist([&](long long kk) {
            return kk >= 1 && materialise(sheaf.decoration, kk).ample;
        });
        MaterialisedDecoration mat = materialise(sheaf.decoration, k);
        LatticePolyhedron window =
            translate(section_polyhedron(ToricDivisor{&fan, mat.twist}), m);
        std::vector<LatticePolyhedron> cutters;
        for (int s = 1; s < sheaf.decoration.strat.size(); ++s)
            cutters.push_back(
                section_polyhedron(ToricDivisor{&fan, *mat.twisted(s)}));
        CellComplex cx = subdivide(window, cutters);
        Json body = cells_to_json(cx);
        body["twist"] = k;
        body["degree"] = Json::array();
        for (long long x : m) body["degree"].push_back(x);
        emit(document("cells", std::move(body), fan), out_path);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 1;
    } catch (const MismatchError& e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return 3;
    } catch (const MathError& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
