#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"

namespace emoaug {

// Calls fn(line_number, object) for each non-blank line. Parse failures and
// exceptions thrown by fn are rethrown as DataError prefixed with "line N: ".
void for_each_jsonl(std::istream& in,
                    const std::function<void(std::size_t, const nlohmann::json&)>& fn);

std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

// Compact single-line dump, keys sorted, followed by '\n'.
void write_jsonl_line(std::ostream& out, const nlohmann::json& j);

// Pretty JSON with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace emoaug
