#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace agentloop {

class AgentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidBeliefKey : public AgentError {
 public:
  using AgentError::AgentError;
};

class PlanHeadError : public AgentError {
 public:
  PlanHeadError(std::size_t plan_index, const std::string& what)
      : AgentError("plan head " + std::to_string(plan_index) + " failed: " + what),
        plan_index_(plan_index) {}
  std::size_t plan_index() const { return plan_index_; }

 private:
  std::size_t plan_index_;
};

class PlanBodyError : public AgentError {
 public:
  PlanBodyError(std::size_t plan_index, const std::string& what)
      : AgentError("plan body " + std::to_string(plan_index) + " failed: " + what),
        plan_index_(plan_index) {}
  std::size_t plan_index() const { return plan_index_; }

 private:
  std::size_t plan_index_;
};

class ReviseError : public AgentError {
 public:
  using AgentError::AgentError;
};

class DuplicateAgentId : public AgentError {
 public:
  using AgentError::AgentError;
};

class EnvUpdateError : public AgentError {
 public:
  using AgentError::AgentError;
};

class SchedulingError : public AgentError {
 public:
  using AgentError::AgentError;
};

class IndexError : public AgentError {
 public:
  using AgentError::AgentError;
};

class DecodeError : public AgentError {
 public:
  DecodeError(std::size_t byte_offset, const std::string& what)
      : AgentError("decode failed at byte " + std::to_string(byte_offset) + ": " + what),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class ChannelClosed : public AgentError {
 public:
  using AgentError::AgentError;
};

/// A non-fatal error captured during a reasoning cycle and attached to the
/// trace instead of aborting the run.
struct ErrorRecord {
  std::string kind;
  std::string detail;
  std::optional<std::size_t> plan_index;

  nlohmann::json to_json() const {
    nlohmann::json j{{"kind", kind}, {"detail", detail}};
    if (plan_index) j["planIndex"] = *plan_index;
    return j;
  }

  bool operator==(const ErrorRecord&) const = default;
};

}  // namespace agentloop
