#include "cliffspec/json_io.hpp"

#include <algorithm>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cliffspec/errors.hpp"

namespace cliffspec {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;
using complexd = std::complex<double>;

json parse_document(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw parse_error("malformed JSON document");
    if (!doc.is_object()) throw parse_error("top-level JSON value must be an object");
    return doc;
}

const json& field(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw parse_error(std::string("missing key \"") + key + "\"");
    return *it;
}

double as_number(const json& j, const char* what) {
    if (!j.is_number()) throw parse_error(std::string(what) + " must be a number");
    return j.get<double>();
}

int as_count(const json& j, const char* what) {
    if (!j.is_number_integer()) throw parse_error(std::string(what) + " must be an integer");
    auto v = j.get<long long>();
    if (v < 1 || v > 1 << 20) throw parse_error(std::string(what) + " out of range");
    return static_cast<int>(v);
}

complexd as_complex(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw parse_error(std::string(what) + " must be a [re, im] pair");
    return {as_number(j[0], what), as_number(j[1], what)};
}

Eigen::MatrixXd read_real_matrix(const json& j, int d, const char* what) {
    Eigen::MatrixXd M(d, d);
    if (!j.is_array()) throw parse_error(std::string(what) + " must be an array");
    const auto dim = static_cast<std::size_t>(d);
    if (j.size() == dim && !j.empty() && j[0].is_array()) {
        for (std::size_t r = 0; r < dim; ++r) {
            const json& row = j[r];
            if (!row.is_array() || row.size() != dim)
                throw parse_error(std::string(what) + " rows must have length d");
            for (std::size_t c = 0; c < dim; ++c)
                M(static_cast<int>(r), static_cast<int>(c)) = as_number(row[c], what);
        }
    } else if (j.size() == dim * dim) {
        for (std::size_t i = 0; i < dim * dim; ++i)
            M(static_cast<int>(i / dim), static_cast<int>(i % dim)) = as_number(j[i], what);
    } else {
        throw parse_error(std::string(what) + " must hold d rows or d*d entries");
    }
    return M;
}

ComplexMatrix read_complex_matrix(const json& j, int d, const char* what) {
    ComplexMatrix M(d, d);
    if (!j.is_array() || j.size() != static_cast<std::size_t>(d))
        throw parse_error(std::string(what) + " must hold d rows");
    for (int r = 0; r < d; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
            throw parse_error(std::string(what) + " rows must have length d");
        for (int c = 0; c < d; ++c)
            M(r, c) = as_complex(row[static_cast<std::size_t>(c)], what);
    }
    return M;
}

ojson complex_value(complexd z) { return ojson::array({z.real(), z.imag()}); }

MatrixInput load_matrix_document(const json& doc) {
    MatrixInput out;
    const int d = as_count(field(doc, "d"), "\"d\"");
    if (doc.contains("A")) {
        const json& A = field(doc, "A");
        const int n = as_count(field(doc, "n"), "\"n\"");
        if (!A.is_array() || A.size() != static_cast<std::size_t>(n))
            throw parse_error("\"A\" must hold n matrices");
        std::vector<Eigen::MatrixXd> ops;
        ops.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            ops.push_back(read_real_matrix(A[static_cast<std::size_t>(i)], d, "\"A\" entry"));
        out.is_pair = true;
        out.pair = make_operator_tuple(std::move(ops));
        return out;
    }
    if (doc.contains("M")) {
        out.is_pair = false;
        out.matrix = read_complex_matrix(field(doc, "M"), d, "\"M\"");
        return out;
    }
    throw parse_error("expected a matrix document with key \"A\" or \"M\"");
}

} // namespace

ComplexMatrix MatrixInput::complexified() const {
    return is_pair ? complexify(pair) : matrix;
}

MatrixInput load_matrix_json(const std::string& text) {
    return load_matrix_document(parse_document(text));
}

std::string dump_pair_json(const OperatorTuple& t) {
    ojson doc;
    doc["n"] = t.n;
    doc["d"] = t.d;
    ojson mats = ojson::array();
    for (const Eigen::MatrixXd& op : t.ops) {
        ojson rows = ojson::array();
        for (int r = 0; r < t.d; ++r) {
            ojson row = ojson::array();
            for (int c = 0; c < t.d; ++c) row.push_back(op(r, c));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    doc["A"] = std::move(mats);
    return doc.dump(2) + "\n";
}

std::string dump_spectrum_json(const JointSpectrum& S, const OutputMeta& meta) {
    ojson doc;
    doc["version"] = meta.version;
    doc["seed"] = meta.seed;
    ojson tols;
    tols["cluster_tol"] = meta.cluster_tol;
    tols["rank_tol"] = meta.rank_tol;
    doc["tolerances"] = std::move(tols);

    ojson points = ojson::array();
    for (const SpectrumPoint& p : S.points) {
        ojson entry;
        entry["u"] = complex_value(p.u);
        entry["k"] = p.k;
        points.push_back(std::move(entry));
    }
    doc["points"] = std::move(points);

    ojson blocks = ojson::array();
    for (const JordanCluster& cluster : S.structure.clusters) {
        ojson entry;
        entry["lambda"] = complex_value(cluster.eigenvalue);
        entry["sizes"] = cluster.block_sizes;
        blocks.push_back(std::move(entry));
    }
    doc["blocks"] = std::move(blocks);
    return doc.dump(2) + "\n";
}

JointSpectrum load_spectrum_json(const std::string& text) {
    const json doc = parse_document(text);
    const json& blocks = field(doc, "blocks");
    if (!blocks.is_array() || blocks.empty())
        throw parse_error("\"blocks\" must be a non-empty array");

    JointSpectrum S;
    for (const json& entry : blocks) {
        if (!entry.is_object()) throw parse_error("\"blocks\" entries must be objects");
        JordanCluster cluster;
        cluster.eigenvalue = as_complex(field(entry, "lambda"), "\"lambda\"");
        const json& sizes = field(entry, "sizes");
        if (!sizes.is_array() || sizes.empty())
            throw parse_error("\"sizes\" must be a non-empty array");
        for (const json& s : sizes) cluster.block_sizes.push_back(as_count(s, "block size"));
        std::sort(cluster.block_sizes.rbegin(), cluster.block_sizes.rend());
        S.structure.clusters.push_back(std::move(cluster));
    }

    for (const JordanCluster& cluster : S.structure.clusters)
        for (int size : cluster.block_sizes)
            for (int k = 0; k < size; ++k) S.points.push_back({cluster.eigenvalue, k});
    std::sort(S.points.begin(), S.points.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) {
        if (a.u.real() != b.u.real()) return a.u.real() < b.u.real();
        if (a.u.imag() != b.u.imag()) return a.u.imag() < b.u.imag();
        return a.k < b.k;
    });
    return S;
}

} // namespace cliffspec
