#include "toric/json_io.hpp"

#include "toric/errors.hpp"

#include <cstdint>
#include <sstream>

namespace toric {

namespace {

[[noreturn]] void bad(const std::string& what) { throw SchemaError(what); }

long long as_int(const Json& j, const char* where) {
    if (!j.is_number_integer()) bad(std::string(where) + ": expected an integer");
    return j.get<long long>();
}

ZVec zvec_from(const Json& j, const char* where) {
    if (!j.is_array()) bad(std::string(where) + ": expected an integer array");
    ZVec v;
    for (const Json& x : j) v.push_back(as_int(x, where));
    return v;
}

Json zvec_to(const ZVec& v) {
    Json j = Json::array();
    for (long long x : v) j.push_back(x);
    return j;
}

QVec qvec_from(const Json& j, const char* where) {
    if (!j.is_array()) bad(std::string(where) + ": expected a rational array");
    QVec v;
    for (const Json& x : j) {
        if (!x.is_string()) bad(std::string(where) + ": rationals must be strings");
        try {
            v.push_back(rat_from_string(x.get<std::string>()));
        } catch (const std::exception& e) {
            bad(std::string(where) + ": " + e.what());
        }
    }
    return v;
}

Json qvec_to(const QVec& v) {
    Json j = Json::array();
    for (const Rat& x : v) j.push_back(rat_to_string(x));
    return j;
}

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        bad(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

}  // namespace

std::string fan_hash(const Fan& fan) {
    std::ostringstream os;
    os << fan.n << ';';
    for (const ZVec& r : fan.rays) {
        for (long long x : r) os << x << ',';
        os << '|';
    }
    os << ';';
    for (const Cone& c : fan.max_cones) {
        for (int i : c.rays) os << i << ',';
        os << '|';
    }
    if (fan.ample) {
        os << ';';
        for (long long x : *fan.ample) os << x << ',';
    }
    std::uint64_t h = 1469598103934665603ULL;
    for (char ch : os.str()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

Json document(const std::string& kind, Json body, const Fan& fan) {
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["kind"] = kind;
    for (auto& [key, value] : body.items()) doc[key] = std::move(value);
    doc["provenance"] = Json{{"tool", kToolVersion}, {"fan_hash", fan_hash(fan)}};
    return doc;
}

void check_schema(const Json& doc) {
    if (!doc.is_object()) bad("document is not a JSON object");
    const Json& v = field(doc, "schema");
    if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
        bad("unknown schema version");
}

void check_kind(const Json& doc, const std::string& kind) {
    const Json& k = field(doc, "kind");
    if (!k.is_string() || k.get<std::string>() != kind)
        bad("expected a document of kind \"" + kind + "\"");
}

Json fan_to_json(const Fan& fan) {
    Json j;
    j["rays"] = Json::array();
    for (const ZVec& r : fan.rays) j["rays"].push_back(zvec_to(r));
    j["max_cones"] = Json::array();
    for (const Cone& c : fan.max_cones) {
        Json cone = Json::array();
        for (int i : c.rays) cone.push_back(i);
        j["max_cones"].push_back(cone);
    }
    if (fan.ample) j["ample"] = zvec_to(*fan.ample);
    return j;
}

Fan fan_from_json(const Json& j) {
    if (!j.is_object()) bad("variety: expected an object");
    if (j.contains("ample_polytope")) {
        std::vector<ZVec> verts;
        for (const Json& v : field(j, "ample_polytope"))
            verts.push_back(zvec_from(v, "ample_polytope"));
        return Fan::from_ample_polytope(verts);
    }
    std::vector<ZVec> rays;
    for (const Json& r : field(j, "rays")) rays.push_back(zvec_from(r, "rays"));
    std::vector<Cone> cones;
    for (const Json& c : field(j, "max_cones")) {
        Cone cone;
        for (const Json& i : c) cone.rays.push_back(static_cast<int>(as_int(i, "max_cones")));
        cones.push_back(std::move(cone));
    }
    Fan fan = Fan::from_rays_and_cones(std::move(rays), std::move(cones));
    if (j.contains("ample")) fan.ample = zvec_from(j.at("ample"), "ample");
    return fan;
}

Json divisor_to_json(const ToricDivisor& d) { return Json{{"coeffs", zvec_to(d.a)}}; }

ToricDivisor divisor_from_json(const Json& j, const Fan& fan) {
    ZVec a = zvec_from(field(j, "coeffs"), "coeffs");
    if (a.size() != fan.rays.size()) bad("divisor: one coefficient per ray required");
    return ToricDivisor{&fan, std::move(a)};
}

Json matrix_to_json(const QMat& m) {
    Json j = Json::array();
    for (const QVec& row : m) j.push_back(qvec_to(row));
    return j;
}

QMat matrix_from_json(const Json& j) {
    if (!j.is_array()) bad("matrix: expected an array of rows");
    QMat m;
    for (const Json& row : j) m.push_back(qvec_from(row, "matrix"));
    return m;
}

Json polyhedron_to_json(const LatticePolyhedron& p) {
    Json j;
    j["n"] = p.n;
    j["vertices"] = Json::array();
    for (const QVec& v : p.vertices) j["vertices"].push_back(qvec_to(v));
    j["tail"] = Json::array();
    for (const ZVec& r : p.tail_rays) j["tail"].push_back(zvec_to(r));
    j["hrep"] = Json::array();
    for (const auto& [normal, offset] : p.hrep)
        j["hrep"].push_back(Json{{"normal", zvec_to(normal)},
                                 {"offset", rat_to_string(offset)}});
    return j;
}

LatticePolyhedron polyhedron_from_json(const Json& j) {
    int n = static_cast<int>(as_int(field(j, "n"), "n"));
    std::vector<std::pair<ZVec, Rat>> hrep;
    for (const Json& h : field(j, "hrep")) {
        ZVec normal = zvec_from(field(h, "normal"), "hrep normal");
        const Json& off = field(h, "offset");
        if (!off.is_string()) bad("hrep offset: expected a rational string");
        hrep.push_back({std::move(normal), rat_from_string(off.get<std::string>())});
    }
    return LatticePolyhedron::from_inequalities(n, std::move(hrep));
}

Json decoration_to_json(const WeilDecoration& dec) {
    Json j;
    j["rank"] = dec.rank();
    j["strata"] = Json::array();
    for (int s = 0; s < dec.strat.size(); ++s) {
        Json entry;
        entry["closure"] = matrix_to_json(dec.strat.closures[s]);
        if (dec.divisor[s])
            entry["divisor"] = zvec_to(*dec.divisor[s]);
        else
            entry["divisor"] = "infinity";
        j["strata"].push_back(std::move(entry));
    }
    return j;
}

WeilDecoration decoration_from_json(const Json& j, const Fan& fan) {
    int rank = static_cast<int>(as_int(field(j, "rank"), "rank"));
    std::vector<std::pair<QMat, ExtCoeffs>> strata;
    for (const Json& entry : field(j, "strata")) {
        QMat closure = matrix_from_json(field(entry, "closure"));
        const Json& div = field(entry, "divisor");
        ExtCoeffs coeffs;
        if (div.is_string()) {
            if (div.get<std::string>() != "infinity")
                bad("stratum divisor: expected coefficients or \"infinity\"");
        } else {
            ZVec a = zvec_from(div, "stratum divisor");
            if (a.size() != fan.rays.size())
                bad("stratum divisor: one coefficient per ray required");
            coeffs = std::move(a);
        }
        strata.push_back({std::move(closure), std::move(coeffs)});
    }
    try {
        return make_decoration(fan, rank, std::move(strata));
    } catch (const SchemaError&) {
        throw;
    } catch (const MathError&) {
        throw;
    } catch (const std::exception& e) {
        bad(std::string("decoration: ") + e.what());
    }
}

Json box_to_json(const DegreeBox& box) {
    return Json{{"lo", zvec_to(box.lo)}, {"hi", zvec_to(box.hi)}};
}

DegreeBox box_from_json(const Json& j) {
    DegreeBox box{zvec_from(field(j, "lo"), "box lo"), zvec_from(field(j, "hi"), "box hi")};
    if (box.lo.size() != box.hi.size()) bad("box: lo/hi length mismatch");
    for (std::size_t i = 0; i < box.lo.size(); ++i)
        if (box.lo[i] > box.hi[i]) bad("box: lo exceeds hi");
    return box;
}

Json table_to_json(const GradedTable& table, bool verbose) {
    Json j;
    j["method"] = table.method;
    j["twist"] = table.twist;
    j["box"] = box_to_json(table.box);
    j["entries"] = Json::array();
    for (const auto& [degree, dims] : table.entries) {
        bool zero = true;
        for (int d : dims) zero = zero && d == 0;
        if (zero && !verbose) continue;
        Json row;
        row["degree"] = zvec_to(degree);
        row["dims"] = Json::array();
        for (int d : dims) row["dims"].push_back(d);
        j["entries"].push_back(std::move(row));
    }
    return j;
}

Json e1_to_json(const SpectralE1Report& rep) {
    Json j = Json::array();
    for (const auto& [pos, dim] : rep.dims) {
        Json entry;
        entry["level"] = pos.first;
        entry["q"] = pos.second;
        entry["dim"] = dim;
        auto it = rep.labels.find(pos);
        entry["chains"] = Json::array();
        if (it != rep.labels.end())
            for (const std::string& label : it->second) entry["chains"].push_back(label);
        j.push_back(std::move(entry));
    }
    return j;
}

Json cells_to_json(const CellComplex& cx) {
    Json j;
    j["ambient"] = polyhedron_to_json(cx.ambient);
    j["cells"] = Json::array();
    for (const Cell& cell : cx.cells) {
        Json c;
        c["dim"] = cell.dim;
        c["vertices"] = Json::array();
        for (const QVec& v : cell.vrep) c["vertices"].push_back(qvec_to(v));
        c["sample"] = qvec_to(cell.sample);
        c["faces"] = Json::array();
        for (int f : cell.faces) c["faces"].push_back(f);
        j["cells"].push_back(std::move(c));
    }
    return j;
}

Json extension_to_json(const ExtensionResult& res) {
    Json j;
    j["twist"] = res.twist;
    j["ext_dim"] = res.ext_dim;
    j["split"] = res.split;
    j["degenerate"] = res.degenerate;
    j["component_divisors"] = Json::array();
    for (const ToricDivisor& d : res.component_divisors)
        j["component_divisors"].push_back(divisor_to_json(d));
    j["decoration"] = decoration_to_json(res.decoration);
    j["sub"] = decoration_to_json(res.sub);
    j["quot"] = decoration_to_json(res.quot);
    j["iota"] = matrix_to_json(res.iota);
    j["ones"] = matrix_to_json(res.ones);
    return j;
}

Json sheaf_to_json(const WeilDecoration& dec) {
    Json body;
    body["variety"] = fan_to_json(*dec.fan);
    body["decoration"] = decoration_to_json(dec);
    return document("sheaf", std::move(body), *dec.fan);
}

LoadedSheaf sheaf_from_json(const Json& doc) {
    check_schema(doc);
    check_kind(doc, "sheaf");
    auto fan = std::make_shared<const Fan>(fan_from_json(field(doc, "variety")));
    WeilDecoration dec = decoration_from_json(field(doc, "decoration"), *fan);
    return LoadedSheaf{std::move(fan), std::move(dec)};
}

Json divisor_doc_to_json(const ToricDivisor& d) {
    Json body;
    body["variety"] = fan_to_json(*d.fan);
    body["divisor"] = divisor_to_json(d);
    return document("divisor", std::move(body), *d.fan);
}

LoadedDivisor divisor_doc_from_json(const Json& doc) {
    check_schema(doc);
    check_kind(doc, "divisor");
    auto fan = std::make_shared<const Fan>(fan_from_json(field(doc, "variety")));
    ToricDivisor d = divisor_from_json(field(doc, "divisor"), *fan);
    return LoadedDivisor{std::move(fan), std::move(d)};
}

}  // namespace toric
