#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace forge::io {

// Throws FileNotFound / IoError.
std::string read_text(const std::filesystem::path& path);
// Throws FileNotFound / SchemaMismatch on malformed JSON.
nlohmann::json read_json(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view content);

// Two-space indented with a trailing newline; byte-stable for equal values.
std::string dump(const nlohmann::json& doc);

std::string sha256_hex(std::string_view bytes);

}  // namespace forge::io
