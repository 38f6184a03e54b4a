#include "pwlnet/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pwlnet/errors.hpp"

namespace pwlnet {
namespace {

using json = nlohmann::json;

json scal(double v) { return v; }
json scal(const Rational& v) { return v.str(); }

double parse_scalar(const json& j, double*) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        // "p/q" form written by exact mode; round once through Rational.
        try {
            return Rational(j.get<std::string>()).convert_to<double>();
        } catch (const std::exception&) {
            throw IoError("bad numeric string: " + j.get<std::string>());
        }
    }
    throw IoError("expected a number");
}

Rational parse_scalar(const json& j, Rational*) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) return ScalarTraits<Rational>::from_double(j.get<double>());
    if (j.is_string()) {
        try {
            return Rational(j.get<std::string>());
        } catch (const std::exception&) {
            throw IoError("bad numeric string: " + j.get<std::string>());
        }
    }
    throw IoError("expected a number");
}

template <class T>
std::vector<T> parse_vector(const json& j) {
    if (!j.is_array()) throw IoError("expected an array");
    std::vector<T> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(parse_scalar(e, static_cast<T*>(nullptr)));
    return out;
}

template <class T>
json vector_json(const std::vector<T>& v) {
    json a = json::array();
    for (const T& x : v) a.push_back(scal(x));
    return a;
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw IoError(std::string("missing field: ") + name);
    return *it;
}

template <class T>
json cpwl_json(const BasicCpwl<T>& f) {
    json j;
    j["lo"] = scal(f.grid().lo());
    j["hi"] = scal(f.grid().hi());
    j["nodes"] = vector_json(f.grid().nodes());
    j["values"] = vector_json(f.values());
    return j;
}

template <class T>
BasicCpwl<T> cpwl_from_json(const json& j) {
    if (!j.is_object()) throw IoError("cpwl: expected an object");
    std::vector<T> nodes = parse_vector<T>(field(j, "nodes"));
    std::vector<T> values = parse_vector<T>(field(j, "values"));
    T lo = parse_scalar(field(j, "lo"), static_cast<T*>(nullptr));
    T hi = parse_scalar(field(j, "hi"), static_cast<T*>(nullptr));
    if (nodes.empty() || nodes.front() != lo || nodes.back() != hi)
        throw ValidationError("cpwl: nodes must start at lo and end at hi");
    return BasicCpwl<T>(BasicGrid<T>(std::move(nodes)), std::move(values));
}

template <class T>
json network_json(const BasicReluNetwork<T>& n) {
    json j;
    j["input_dim"] = n.input_dim();
    j["output_dim"] = n.output_dim();
    json layers = json::array();
    for (const auto& layer : n.layers()) {
        json lj;
        json rows = json::array();
        for (const auto& row : layer.weights) rows.push_back(vector_json(row));
        lj["weights"] = std::move(rows);
        lj["biases"] = vector_json(layer.biases);
        layers.push_back(std::move(lj));
    }
    j["layers"] = std::move(layers);
    return j;
}

template <class T>
BasicReluNetwork<T> network_from_json(const json& j) {
    if (!j.is_object()) throw IoError("network: expected an object");
    const json& jl = field(j, "layers");
    if (!jl.is_array()) throw IoError("network: layers must be an array");
    std::vector<BasicAffineLayer<T>> layers;
    layers.reserve(jl.size());
    for (const auto& lj : jl) {
        const json& jw = field(lj, "weights");
        if (!jw.is_array()) throw IoError("network: weights must be an array of rows");
        BasicAffineLayer<T> layer;
        layer.weights.reserve(jw.size());
        for (const auto& row : jw) layer.weights.push_back(parse_vector<T>(row));
        layer.biases = parse_vector<T>(field(lj, "biases"));
        layers.push_back(std::move(layer));
    }
    std::size_t in_dim = field(j, "input_dim").get<std::size_t>();
    std::size_t out_dim = field(j, "output_dim").get<std::size_t>();
    BasicReluNetwork<T> net(in_dim, std::move(layers));
    if (net.output_dim() != out_dim)
        throw ValidationError("network: declared output_dim disagrees with the layers");
    return net;
}

json problem_json(const KstProblem& p) {
    json j;
    j["d"] = p.d;
    j["lambdas"] = vector_json(p.lambdas);
    json inners = json::array();
    for (const auto& f : p.inners) inners.push_back(cpwl_json(f));
    j["inners"] = std::move(inners);
    json outer = cpwl_json(p.outer);
    outer["kind"] = "cpwl";
    j["outer"] = std::move(outer);
    return j;
}

KstProblem problem_from_json(const json& j) {
    if (!j.is_object()) throw IoError("problem: expected an object");
    KstProblem p;
    p.d = field(j, "d").get<std::size_t>();
    p.lambdas = parse_vector<double>(field(j, "lambdas"));
    const json& ji = field(j, "inners");
    if (!ji.is_array()) throw IoError("problem: inners must be an array");
    p.inners.clear();
    for (const auto& f : ji) p.inners.push_back(cpwl_from_json<double>(f));
    const json& jo = field(j, "outer");
    if (field(jo, "kind").get<std::string>() != "cpwl")
        throw IoError("problem: unsupported outer kind");
    p.outer = cpwl_from_json<double>(jo);
    p.validate();
    return p;
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw IoError("malformed JSON");
    return j;
}

} // namespace

std::string cpwl_to_json_text(const CpwlFunction& f, int indent) {
    return cpwl_json(f).dump(indent);
}

std::string cpwl_to_json_text(const BasicCpwl<Rational>& f, int indent) {
    return cpwl_json(f).dump(indent);
}

CpwlFunction cpwl_from_json_text(const std::string& text) {
    return cpwl_from_json<double>(parse_text(text));
}

BasicCpwl<Rational> cpwl_rational_from_json_text(const std::string& text) {
    return cpwl_from_json<Rational>(parse_text(text));
}

std::string network_to_json_text(const ReluNetwork& n, int indent) {
    return network_json(n).dump(indent);
}

std::string network_to_json_text(const BasicReluNetwork<Rational>& n, int indent) {
    return network_json(n).dump(indent);
}

ReluNetwork network_from_json_text(const std::string& text) {
    return network_from_json<double>(parse_text(text));
}

BasicReluNetwork<Rational> network_rational_from_json_text(const std::string& text) {
    return network_from_json<Rational>(parse_text(text));
}

std::string kst_problem_to_json_text(const KstProblem& p, int indent) {
    return problem_json(p).dump(indent);
}

KstProblem kst_problem_from_json_text(const std::string& text) {
    return problem_from_json(parse_text(text));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

CpwlFunction read_cpwl(const std::string& path) {
    return cpwl_from_json_text(read_text_file(path));
}

BasicCpwl<Rational> read_cpwl_rational(const std::string& path) {
    return cpwl_rational_from_json_text(read_text_file(path));
}

void write_cpwl(const std::string& path, const CpwlFunction& f) {
    write_text_file(path, cpwl_to_json_text(f) + "\n");
}

void write_cpwl(const std::string& path, const BasicCpwl<Rational>& f) {
    write_text_file(path, cpwl_to_json_text(f) + "\n");
}

ReluNetwork read_network(const std::string& path) {
    return network_from_json_text(read_text_file(path));
}

BasicReluNetwork<Rational> read_network_rational(const std::string& path) {
    return network_rational_from_json_text(read_text_file(path));
}

void write_network(const std::string& path, const ReluNetwork& n) {
    write_text_file(path, network_to_json_text(n) + "\n");
}

void write_network(const std::string& path, const BasicReluNetwork<Rational>& n) {
    write_text_file(path, network_to_json_text(n) + "\n");
}

KstProblem read_kst_problem(const std::string& path) {
    return kst_problem_from_json_text(read_text_file(path));
}

void write_kst_problem(const std::string& path, const KstProblem& p) {
    write_text_file(path, kst_problem_to_json_text(p) + "\n");
}

void write_kst_csv(const std::string& path, const std::vector<KstRateRow>& rows) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "d,N,L,samples,measured_error,bound,width_inner,width_outer\n";
    for (const auto& r : rows)
        ss << r.d << ',' << r.blocks << ',' << r.stages << ',' << r.samples << ','
           << r.measured_error << ',' << r.bound << ',' << r.width_inner << ','
           << r.width_outer << '\n';
    write_text_file(path, ss.str());
}

void write_shatter_csv(const std::string& path, const ShatterReport& report) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "trial,n_points,success,shatter_count,bound\n";
    for (const auto& t : report.trials)
        ss << t.trial << ',' << t.n_points << ',' << (t.success ? 1 : 0) << ','
           << t.shatter_count << ',' << t.bound << '\n';
    write_text_file(path, ss.str());
}

void write_growth_csv(const std::string& path, const std::vector<GrowthRow>& rows) {
    std::ostringstream ss;
    ss << "n_points,shatter_count,success\n";
    for (const auto& r : rows)
        ss << r.n_points << ',' << r.shatter_count << ',' << (r.success ? 1 : 0) << '\n';
    write_text_file(path, ss.str());
}

} // namespace pwlnet
