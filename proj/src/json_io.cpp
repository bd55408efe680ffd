#include "nonsig/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nonsig {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(what) + ": " + e.what());
    }
}

json load_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw InputError(std::string(what) + ": cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_or_throw(buf.str(), what);
}

void save_file(const std::string& path, const json& j, const char* what) {
    std::ofstream out(path);
    if (!out) throw InputError(std::string(what) + ": cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw InputError(std::string(what) + ": write to '" + path + "' failed");
}

int get_count(const json& j, const char* field, const char* what) {
    if (!j.contains(field))
        throw ValidationError(std::string(what) + ": missing field '" + field + "'");
    if (!j[field].is_number_integer())
        throw ValidationError(std::string(what) + ": field '" + field + "' must be an integer");
    const int v = j[field].get<int>();
    if (v < 1)
        throw ValidationError(std::string(what) + ": field '" + field + "' must be positive");
    return v;
}

// Flattens a nested numeric array, checking every level's length and
// reporting the JSON path of the first offending element.
void flatten(const json& node, const std::vector<int>& dims, std::size_t level,
             const std::string& path, std::vector<double>& out, const char* what) {
    if (level == dims.size()) {
        if (!node.is_number())
            throw ValidationError(std::string(what) + ": " + path + " must be a number");
        out.push_back(node.get<double>());
        return;
    }
    if (!node.is_array() || node.size() != static_cast<std::size_t>(dims[level]))
        throw ValidationError(std::string(what) + ": " + path + " must be an array of length " +
                              std::to_string(dims[level]));
    for (std::size_t i = 0; i < node.size(); ++i)
        flatten(node[i], dims, level + 1, path + "[" + std::to_string(i) + "]", out, what);
}

std::vector<double> read_table(const json& j, const char* field, const std::vector<int>& dims,
                               const char* what) {
    if (!j.contains(field))
        throw ValidationError(std::string(what) + ": missing field '" + field + "'");
    std::vector<double> flat;
    std::size_t total = 1;
    for (int d : dims) total *= d;
    flat.reserve(total);
    flatten(j[field], dims, 0, field, flat, what);
    return flat;
}

json nest(const std::vector<double>& flat, const std::vector<int>& dims, std::size_t level,
          std::size_t& cursor) {
    if (level == dims.size()) return flat[cursor++];
    json arr = json::array();
    for (int i = 0; i < dims[level]; ++i) arr.push_back(nest(flat, dims, level + 1, cursor));
    return arr;
}

json to_nested(const std::vector<double>& flat, const std::vector<int>& dims) {
    std::size_t cursor = 0;
    return nest(flat, dims, 0, cursor);
}

}  // namespace

Box parse_box_json(const std::string& text) {
    const json j = parse_or_throw(text, "box");
    const int n = get_count(j, "n", "box"), m = get_count(j, "m", "box");
    return Box(n, m, read_table(j, "probs", {n, m, 2, 2}, "box"));
}

Box read_box_json(const std::string& path) {
    const json j = load_file(path, "box");
    const int n = get_count(j, "n", "box"), m = get_count(j, "m", "box");
    return Box(n, m, read_table(j, "probs", {n, m, 2, 2}, "box"));
}

void write_box_json(const std::string& path, const Box& box) {
    json j;
    j["n"] = box.n_inputs_a();
    j["m"] = box.n_inputs_b();
    j["probs"] = to_nested(box.raw(), {box.n_inputs_a(), box.n_inputs_b(), 2, 2});
    save_file(path, j, "box");
}

TripartiteBox parse_tripartite_json(const std::string& text) {
    const json j = parse_or_throw(text, "tripartite box");
    const int n = get_count(j, "n", "tripartite box"), m = get_count(j, "m", "tripartite box");
    return TripartiteBox(n, m, read_table(j, "probs", {n, m, 2, 2, 2}, "tripartite box"));
}

TripartiteBox read_tripartite_json(const std::string& path) {
    const json j = load_file(path, "tripartite box");
    const int n = get_count(j, "n", "tripartite box"), m = get_count(j, "m", "tripartite box");
    return TripartiteBox(n, m, read_table(j, "probs", {n, m, 2, 2, 2}, "tripartite box"));
}

void write_tripartite_json(const std::string& path, const TripartiteBox& tri) {
    json j;
    j["n"] = tri.n_inputs_a();
    j["m"] = tri.n_inputs_b();
    j["probs"] = to_nested(tri.raw(), {tri.n_inputs_a(), tri.n_inputs_b(), 2, 2, 2});
    save_file(path, j, "tripartite box");
}

namespace {

BellFunctional functional_from_json(const json& j) {
    const int n = get_count(j, "n", "functional"), m = get_count(j, "m", "functional");
    const bool has_corr = j.contains("correlators");
    const bool has_coeffs = j.contains("coeffs");
    if (has_corr == has_coeffs)
        throw ValidationError(
            "functional: exactly one of 'correlators' and 'coeffs' must be present");
    if (has_corr)
        return BellFunctional::from_correlators(n, m,
                                                read_table(j, "correlators", {n, m}, "functional"));
    return BellFunctional::from_coeffs(n, m, read_table(j, "coeffs", {n, m, 2, 2}, "functional"));
}

}  // namespace

BellFunctional parse_functional_json(const std::string& text) {
    return functional_from_json(parse_or_throw(text, "functional"));
}

BellFunctional read_functional_json(const std::string& path) {
    return functional_from_json(load_file(path, "functional"));
}

void write_functional_json(const std::string& path, const BellFunctional& f) {
    json j;
    j["n"] = f.n;
    j["m"] = f.m;
    if (f.correlators)
        j["correlators"] = to_nested(*f.correlators, {f.n, f.m});
    else
        j["coeffs"] = to_nested(f.coeffs, {f.n, f.m, 2, 2});
    save_file(path, j, "functional");
}

}  // namespace nonsig
