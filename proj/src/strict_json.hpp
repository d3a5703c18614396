#pragma once

// Object reader that tracks its JSON path, reports missing or mistyped keys by
// path and rejects keys nobody asked for.

#include "sfbench/error.hpp"

#include <json.hpp>

#include <set>
#include <string>

namespace sfbench::detail {

class StrictObject {
 public:
  StrictObject(const nlohmann::json& j, std::string path, ErrorKind kind)
      : j_(j), path_(std::move(path)), kind_(kind) {
    if (!j_.is_object()) fail(kind_, where("") + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const nlohmann::json& at(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) fail(kind_, where(key) + ": missing required key");
    return j_.at(key);
  }

  template <typename T>
  T get(const std::string& key) {
    return convert<T>(at(key), key);
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) {
    if (!has(key)) return fallback;
    return convert<T>(j_.at(key), key);
  }

  StrictObject child(const std::string& key) { return {at(key), where(key), kind_}; }

  std::string where(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  ErrorKind kind() const noexcept { return kind_; }

  // Call once every expected key has been read.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.contains(it.key())) fail(kind_, where(it.key()) + ": unknown key");
  }

 private:
  template <typename T>
  T convert(const nlohmann::json& v, const std::string& key) const {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) fail(kind_, where(key) + ": expected a number");
    } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!v.is_number_integer()) fail(kind_, where(key) + ": expected an integer");
      if constexpr (std::is_unsigned_v<T>)
        if (v.is_number_integer() && !v.is_number_unsigned())
          fail(kind_, where(key) + ": expected a non-negative integer");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(kind_, where(key) + ": expected a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(kind_, where(key) + ": expected a string");
    }
    try {
      return v.get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(kind_, where(key) + ": " + e.what());
    }
  }

  const nlohmann::json& j_;
  std::string path_;
  ErrorKind kind_;
  std::set<std::string> seen_;
};

}  // namespace sfbench::detail
