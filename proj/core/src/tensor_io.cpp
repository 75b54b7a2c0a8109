#include "mixnorm/tensor_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mixnorm::forms {

namespace {

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

std::int64_t require_integer(const nlohmann::json& j, const char* what) {
    if (!j.is_number_integer())
        throw TensorFormatError(std::string("tensor file: ") + what + " must be an integer");
    return j.get<std::int64_t>();
}

double require_number(const nlohmann::json& j, const char* what) {
    if (!j.is_number())
        throw TensorFormatError(std::string("tensor file: ") + what + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw TensorFormatError(std::string("tensor file: ") + what + " must be finite");
    return v;
}

}  // namespace

void write_tensor(std::ostream& out, const CoefficientTensor& form) {
    out << tensor_to_string(form);
}

std::string tensor_to_string(const CoefficientTensor& form) {
    std::string out = "{\"arity\":";
    out += std::to_string(form.arity());
    out += ",\"dims\":[";
    for (std::size_t j = 0; j < form.dims().size(); ++j) {
        if (j)
            out += ',';
        out += std::to_string(form.dims()[j]);
    }
    out += ']';
    if (form.is_sparse()) {
        out += ",\"sparse_entries\":[";
        bool first = true;
        for (const SparseEntry& e : form.sparse_entries()) {
            if (!first)
                out += ',';
            first = false;
            out += "[[";
            for (std::size_t j = 0; j < e.index.size(); ++j) {
                if (j)
                    out += ',';
                out += std::to_string(e.index[j]);
            }
            out += "],";
            append_number(out, e.value);
            out += ']';
        }
        out += ']';
    } else {
        out += ",\"entries\":[";
        bool first = true;
        for (double v : form.dense_entries()) {
            if (!first)
                out += ',';
            first = false;
            append_number(out, v);
        }
        out += ']';
    }
    out += "}\n";
    return out;
}

void write_tensor_file(const std::string& path, const CoefficientTensor& form) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw TensorFormatError("tensor file: cannot open for writing: " + path);
    write_tensor(out, form);
    if (!out)
        throw TensorFormatError("tensor file: write failed: " + path);
}

CoefficientTensor read_tensor(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw TensorFormatError(std::string("tensor file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw TensorFormatError("tensor file: top level must be an object");
    if (!doc.contains("arity") || !doc.contains("dims"))
        throw TensorFormatError("tensor file: missing arity or dims");
    const std::int64_t arity = require_integer(doc["arity"], "arity");
    if (arity < 1)
        throw TensorFormatError("tensor file: arity must be at least 1");
    if (!doc["dims"].is_array() ||
        static_cast<std::int64_t>(doc["dims"].size()) != arity)
        throw TensorFormatError("tensor file: dims must be an array of length arity");
    std::vector<std::int64_t> dims;
    dims.reserve(static_cast<std::size_t>(arity));
    for (const auto& d : doc["dims"]) {
        const std::int64_t v = require_integer(d, "dimension");
        if (v < 1)
            throw TensorFormatError("tensor file: dimensions must be positive");
        dims.push_back(v);
    }

    const bool has_dense = doc.contains("entries");
    const bool has_sparse = doc.contains("sparse_entries");
    if (has_dense == has_sparse)
        throw TensorFormatError(
            "tensor file: exactly one of entries/sparse_entries must be present");

    try {
        if (has_dense) {
            if (!doc["entries"].is_array())
                throw TensorFormatError("tensor file: entries must be an array");
            std::vector<double> entries;
            entries.reserve(doc["entries"].size());
            for (const auto& v : doc["entries"])
                entries.push_back(require_number(v, "entry"));
            return CoefficientTensor::dense(std::move(dims), std::move(entries));
        }
        if (!doc["sparse_entries"].is_array())
            throw TensorFormatError("tensor file: sparse_entries must be an array");
        std::vector<SparseEntry> entries;
        entries.reserve(doc["sparse_entries"].size());
        for (const auto& pair : doc["sparse_entries"]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_array())
                throw TensorFormatError(
                    "tensor file: sparse entries must be [index-tuple, value] pairs");
            SparseEntry e;
            for (const auto& i : pair[0])
                e.index.push_back(require_integer(i, "sparse index"));
            e.value = require_number(pair[1], "sparse value");
            entries.push_back(std::move(e));
        }
        return CoefficientTensor::sparse(std::move(dims), std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw TensorFormatError(std::string("tensor file: ") + e.what());
    }
}

CoefficientTensor read_tensor_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw TensorFormatError("tensor file: cannot open: " + path);
    return read_tensor(in);
}

}  // namespace mixnorm::forms
