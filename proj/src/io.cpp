#include "solenoid/io.hpp"

#include <fstream>

namespace solenoid {

Json complex_to_json(const Complex& z) {
    if (z.imag() == 0.0) return Json(z.real());
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw InvalidSpec("a complex value is a number or a [re, im] pair");
}

Json system_to_json(const SystemSpec& sys) {
    Json j;
    if (sys.is_circle()) {
        j["type"] = "circle";
        j["N"] = sys.circle_spec().N;
    } else if (sys.is_subshift()) {
        j["type"] = "sft";
        j["A"] = sys.subshift_spec().A;
    } else {
        j["type"] = "ifs";
        j["scale"] = sys.ifs_spec().scale;
        j["digits"] = sys.ifs_spec().digits;
    }
    return j;
}

SystemSpec system_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "circle") return SystemSpec::circle(j.at("N").get<int>());
    if (type == "sft")
        return SystemSpec::subshift(j.at("A").get<std::vector<std::vector<int>>>());
    if (type == "ifs")
        return SystemSpec::ifs(j.at("scale").get<int>(),
                               j.at("digits").get<std::vector<int>>());
    throw InvalidSpec("unknown system type \"" + type + "\"");
}

Json step_to_json(const StepFunction& f) {
    Json j;
    j["resolution"] = f.resolution();
    Json vals = Json::array();
    for (const Complex& v : f.values) vals.push_back(complex_to_json(v));
    j["values"] = std::move(vals);
    return j;
}

StepFunction step_from_json(const SystemSpec& sys, const Json& j) {
    BasisPtr basis = make_basis(sys, j.at("resolution").get<int>());
    std::vector<Complex> vals;
    vals.reserve(j.at("values").size());
    for (const Json& v : j.at("values")) vals.push_back(complex_from_json(v));
    return step_from_values(std::move(basis), std::move(vals));
}

Json measure_to_json(const MeasureVector& mu) {
    Json j;
    j["resolution"] = mu.resolution();
    j["values"] = mu.mass;
    return j;
}

MeasureVector measure_from_json(const SystemSpec& sys, const Json& j) {
    BasisPtr basis = make_basis(sys, j.at("resolution").get<int>());
    return measure_from_mass(std::move(basis), j.at("values").get<std::vector<double>>());
}

Json filter_to_json(const FilterSpec& m0) {
    if (const auto* c = std::get_if<FilterCoeffs>(&m0)) {
        Json a = Json::object();
        for (const auto& [n, an] : c->a) a[std::to_string(n)] = complex_to_json(an);
        Json j;
        j["N"] = c->N;
        j["a"] = std::move(a);
        return j;
    }
    const StepFunction& s = std::get<StepFunction>(m0);
    Json inner;
    inner["N"] = s.system().alphabet_size();
    inner["resolution"] = s.resolution();
    Json vals = Json::array();
    for (const Complex& v : s.values) vals.push_back(complex_to_json(v));
    inner["values"] = std::move(vals);
    return Json{{"step", std::move(inner)}};
}

FilterSpec filter_from_json(const Json& j) {
    if (j.contains("step")) {
        const Json& inner = j.at("step");
        SystemSpec sys = SystemSpec::circle(inner.at("N").get<int>());
        return FilterSpec(step_from_json(sys, inner));
    }
    FilterCoeffs c;
    c.N = j.at("N").get<int>();
    if (c.N < 2) throw InvalidSpec("filter arity must be >= 2");
    for (const auto& [key, val] : j.at("a").items()) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(key, &used);
        } catch (const std::exception&) {
            throw InvalidSpec("coefficient key \"" + key + "\" is not an integer");
        }
        if (used != key.size())
            throw InvalidSpec("coefficient key \"" + key + "\" is not an integer");
        c.a[n] = complex_from_json(val);
    }
    return FilterSpec(std::move(c));
}

Json mult_to_json(const MultFn& m) {
    Json vals = Json::array();
    for (std::uint64_t v : m.values) {
        if (v == kInfiniteMultiplicity)
            vals.push_back("inf");
        else
            vals.push_back(v);
    }
    Json j;
    j["resolution"] = m.resolution();
    j["values"] = std::move(vals);
    return j;
}

MultFn mult_from_json(const SystemSpec& sys, const Json& j) {
    BasisPtr basis = make_basis(sys, j.at("resolution").get<int>());
    std::vector<std::uint64_t> vals;
    vals.reserve(j.at("values").size());
    for (const Json& v : j.at("values")) {
        if (v.is_string() && v.get<std::string>() == "inf") {
            vals.push_back(kInfiniteMultiplicity);
        } else if (v.is_number_integer() || v.is_number_unsigned()) {
            if (v.is_number_integer() && v.get<std::int64_t>() < 0)
                throw InvalidSpec("multiplicities must be >= 0");
            vals.push_back(v.get<std::uint64_t>());
        } else {
            throw InvalidSpec("a multiplicity is a nonnegative integer or \"inf\"");
        }
    }
    return mult_from_values(std::move(basis), std::move(vals));
}

Json point_to_json(const PointCode& p) {
    if (const auto* c = std::get_if<CellIndex>(&p))
        return Json{{"cell", {{"level", c->level}, {"index", c->index}}}};
    return Json{{"word", std::get<SymbolWord>(p)}};
}

PointCode point_from_json(const SystemSpec& sys, const Json& j) {
    PointCode p;
    if (j.contains("cell")) {
        const Json& c = j.at("cell");
        p = CellIndex{c.at("level").get<int>(), c.at("index").get<std::uint64_t>()};
    } else if (j.contains("word")) {
        p = j.at("word").get<SymbolWord>();
    } else {
        throw InvalidSpec("a point is {\"cell\":{...}} or {\"word\":[...]}");
    }
    validate_point(sys, p);
    return p;
}

Json martingale_to_json(const MartingaleFn& m, const std::string& m0_ref,
                        const std::string& h_ref) {
    Json levels = Json::array();
    for (const StepFunction& xi : m.levels) levels.push_back(step_to_json(xi));
    Json j;
    j["m0_ref"] = m0_ref;
    j["h_ref"] = h_ref;
    j["K"] = m.depth();
    j["levels"] = std::move(levels);
    return j;
}

std::string format_double(double v) { return Json(v).dump(); }

std::string step_to_csv(const StepFunction& f) {
    std::string out = "cell_midpoint,re,im\n";
    for (std::uint64_t c = 0; c < f.size(); ++c) {
        out += format_double(f.basis->cell_coordinate(c));
        out += ',';
        out += format_double(f.values[c].real());
        out += ',';
        out += format_double(f.values[c].imag());
        out += '\n';
    }
    return out;
}

std::string scaling_to_csv(const ScalingApprox& s) {
    std::string out = "x,re,im\n";
    for (std::int64_t i = 0; i < s.grid.M; ++i) {
        const Complex& v = s.values[static_cast<std::size_t>(i)];
        out += format_double(grid_point(s.grid, i));
        out += ',';
        out += format_double(v.real());
        out += ',';
        out += format_double(v.imag());
        out += '\n';
    }
    return out;
}

std::string mult_to_csv(const MultFn& m) {
    std::string out = "cell_midpoint,value\n";
    for (std::uint64_t c = 0; c < m.size(); ++c) {
        out += format_double(m.basis->cell_coordinate(c));
        out += ',';
        out += (m.values[c] == kInfiniteMultiplicity) ? "inf" : std::to_string(m.values[c]);
        out += '\n';
    }
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open \"" + path + "\"");
    return Json::parse(in);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidSpec("cannot write \"" + path + "\"");
    out << text;
    if (!out) throw InvalidSpec("failed writing \"" + path + "\"");
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace solenoid
