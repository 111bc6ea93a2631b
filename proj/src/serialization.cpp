#include "jstab/serialization.hpp"

#include <cmath>
#include <cstdio>

#include "jstab/errors.hpp"

namespace jstab {

namespace {

const Json& require_field(const Json& j, const char* key, const char* what) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw InvalidArgumentError(std::string(what) + ": missing field '" + key + "'");
    }
    return *it;
}

} // namespace

Json matrix_to_json(const ComplexMatrix& x) {
    Json re = Json::array();
    Json im = Json::array();
    for (int i = 0; i < x.rows(); ++i) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (int j = 0; j < x.cols(); ++j) {
            re_row.push_back(x(i, j).real());
            im_row.push_back(x(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"rows", x.rows()}, {"cols", x.cols()}, {"re", std::move(re)},
                {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    const int rows = require_field(j, "rows", "matrix").get<int>();
    const int cols = require_field(j, "cols", "matrix").get<int>();
    const Json& re = require_field(j, "re", "matrix");
    const Json& im = require_field(j, "im", "matrix");
    if (static_cast<int>(re.size()) != rows || static_cast<int>(im.size()) != rows) {
        throw InvalidArgumentError("matrix: re/im row count does not match rows");
    }
    std::vector<Complex> entries;
    entries.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int i = 0; i < rows; ++i) {
        const Json& re_row = re[static_cast<std::size_t>(i)];
        const Json& im_row = im[static_cast<std::size_t>(i)];
        if (static_cast<int>(re_row.size()) != cols || static_cast<int>(im_row.size()) != cols) {
            throw InvalidArgumentError("matrix: re/im column count does not match cols");
        }
        for (int k = 0; k < cols; ++k) {
            entries.emplace_back(re_row[static_cast<std::size_t>(k)].get<double>(),
                                 im_row[static_cast<std::size_t>(k)].get<double>());
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

Json model_to_json(const JStarAlgebraModel& model) {
    return Json{{"kind", to_string(model.kind())},
                {"m", model.ambient_rows()},
                {"n", model.ambient_cols()}};
}

std::shared_ptr<const JStarAlgebraModel> model_from_json(const Json& j) {
    const ModelKind kind =
        model_kind_from_string(require_field(j, "kind", "model").get<std::string>());
    const int m = require_field(j, "m", "model").get<int>();
    const int n = require_field(j, "n", "model").get<int>();
    return std::make_shared<const JStarAlgebraModel>(make_model(kind, m, n));
}

Json derivation_spec_to_json(const InnerDerivationSpec& spec) {
    return Json{{"A", matrix_to_json(spec.left)}, {"B", matrix_to_json(spec.right)}};
}

InnerDerivationSpec derivation_spec_from_json(const Json& j) {
    return InnerDerivationSpec{matrix_from_json(require_field(j, "A", "derivation spec")),
                               matrix_from_json(require_field(j, "B", "derivation spec"))};
}

Json control_to_json(const PowerControl& ctrl) {
    return Json{{"type", "power"}, {"theta", ctrl.theta}, {"p", ctrl.p}, {"r", ctrl.r}};
}

PowerControl control_from_json(const Json& j) {
    const std::string type = require_field(j, "type", "control").get<std::string>();
    if (type != "power") {
        throw InvalidArgumentError("control: unsupported type '" + type + "', expected 'power'");
    }
    return PowerControl(require_field(j, "theta", "control").get<double>(),
                        require_field(j, "p", "control").get<double>(),
                        require_field(j, "r", "control").get<double>());
}

Json sample_spec_to_json(const SampleSpec& spec) {
    return Json{{"count", spec.count},
                {"seed", spec.seed},
                {"norm_range", Json::array({spec.norm_lo, spec.norm_hi})},
                {"mu_count", spec.mu_count}};
}

SampleSpec sample_spec_from_json(const Json& j) {
    SampleSpec spec;
    spec.count = require_field(j, "count", "sample spec").get<int>();
    spec.seed = require_field(j, "seed", "sample spec").get<std::uint64_t>();
    const Json& range = require_field(j, "norm_range", "sample spec");
    if (!range.is_array() || range.size() != 2) {
        throw InvalidArgumentError("sample spec: norm_range must be [lo, hi]");
    }
    spec.norm_lo = range[0].get<double>();
    spec.norm_hi = range[1].get<double>();
    spec.mu_count = require_field(j, "mu_count", "sample spec").get<int>();
    validate(spec);
    return spec;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

Json finite_or_tag(double v) {
    if (std::isfinite(v)) return Json(v);
    if (std::isinf(v)) return Json(v > 0 ? "infinity" : "-infinity");
    return Json("nan");
}

} // namespace jstab
