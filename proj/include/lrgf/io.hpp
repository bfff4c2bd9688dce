#pragma once

#include <json.hpp>

#include <string>

#include "lrgf/covariance.hpp"
#include "lrgf/field.hpp"
#include "lrgf/quadratic_form.hpp"
#include "lrgf/spectral_model.hpp"

namespace lrgf::io {

using Json = nlohmann::ordered_json;

// Model catalog entries:
// {dimension, kind, alpha | (alpha_p, alpha_q), p, q, l1: {type, value}}.
// Only constant L1 factors serialize; one-direction models carry their
// ftilde scale in l1.value.
Json model_to_json(const SpectralModel& model);
SpectralModel model_from_json(const Json& j);

// {dimension, support: [[j, g_j], ...], beta, l2_zero}
Json spec_to_json(const QuadraticFormSpec& spec);
QuadraticFormSpec spec_from_json(const Json& j);

// CSV with columns h1[,h2],r.
std::string covariance_table_csv(const CovarianceTable& table);

// CSV with index columns then value; JSON sidecar with the generator
// metadata.
std::string field_csv(const FieldSample& field);
Json field_sidecar(const FieldSample& field);
FieldMeta field_meta_from_json(const Json& j);

// CSV "index,value" for limit-law samples and similar dumps.
std::string samples_csv(std::span<const double> samples);

std::string format_double(double v);  // shortest round-trip formatting

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// FNV-1a 64-bit over a string (config hashing).
std::string fnv1a_hex(const std::string& bytes);

}  // namespace lrgf::io
