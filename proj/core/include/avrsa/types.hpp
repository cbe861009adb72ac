#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace avrsa {

enum class VertexId : std::uint32_t {};
enum class LinkId : std::uint32_t {};
enum class ConnectionId : std::uint64_t {};
enum class CycleId : std::uint32_t {};

constexpr std::size_t index(VertexId v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index(LinkId l) { return static_cast<std::size_t>(l); }
constexpr VertexId vertex_id(std::size_t i) { return VertexId{static_cast<std::uint32_t>(i)}; }
constexpr LinkId link_id(std::size_t i) { return LinkId{static_cast<std::uint32_t>(i)}; }
constexpr std::uint64_t value(ConnectionId c) { return static_cast<std::uint64_t>(c); }
constexpr std::uint32_t value(CycleId c) { return static_cast<std::uint32_t>(c); }

// Errors raised across the library. Callers that only care about "something
// went wrong" can catch avrsa::Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class TopologyError : public Error {
 public:
  using Error::Error;
};

class SpectrumError : public Error {
 public:
  using Error::Error;
};

class RegistryError : public Error {
 public:
  using Error::Error;
};

}  // namespace avrsa
