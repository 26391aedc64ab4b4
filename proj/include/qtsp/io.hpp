#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qtsp/linear_matrix.hpp"
#include "qtsp/quadratic_matrix.hpp"

namespace qtsp {

/// Malformed instance file or value.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Optional generator metadata carried inside an instance file.
struct InstanceMeta {
  std::optional<std::string> family;
  std::optional<unsigned long long> seed;
};

inline constexpr const char* kQuadFormat = "qtsp-quad-v1";
inline constexpr const char* kLinFormat = "qtsp-lin-v1";

/// Serialization is canonical: fixed key order, entries sorted by cell
/// position, rationals as "p" (integers) or "p/q" with q > 1.  Parsing is
/// strict: exact format tag, integer 1-based indices forming real arcs,
/// no duplicate cells, values as exact strings or JSON integers (floats
/// are rejected: they cannot round-trip exactly).
nlohmann::ordered_json quadratic_to_json(const QuadraticCostMatrix& q,
                                         const InstanceMeta* meta = nullptr);
nlohmann::ordered_json linear_to_json(const LinearCostMatrix& c,
                                      const InstanceMeta* meta = nullptr);

QuadraticCostMatrix quadratic_from_json(const nlohmann::json& j,
                                        InstanceMeta* meta = nullptr);
LinearCostMatrix linear_from_json(const nlohmann::json& j,
                                  InstanceMeta* meta = nullptr);

void write_quadratic_file(const std::filesystem::path& path,
                          const QuadraticCostMatrix& q,
                          const InstanceMeta* meta = nullptr);
void write_linear_file(const std::filesystem::path& path,
                       const LinearCostMatrix& c,
                       const InstanceMeta* meta = nullptr);

QuadraticCostMatrix read_quadratic_file(const std::filesystem::path& path,
                                        InstanceMeta* meta = nullptr);
LinearCostMatrix read_linear_file(const std::filesystem::path& path,
                                  InstanceMeta* meta = nullptr);

}  // namespace qtsp
