#ifndef TIMELINE_ERROR_H_
#define TIMELINE_ERROR_H_

#include <stdexcept>
#include <string>

namespace timeline {

// Failure carrying a stable machine-readable code (E_NEED_DATE, E_SCHEMA, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        detail_(message) {}

  const std::string &code() const { return code_; }
  const std::string &detail() const { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

// Schema failure located by file and JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(std::string file, std::string pointer, const std::string &message)
      : Error("E_SCHEMA", Locate(file, pointer) + message),
        file_(std::move(file)),
        pointer_(std::move(pointer)),
        message_(message) {}

  const std::string &file() const { return file_; }
  const std::string &pointer() const { return pointer_; }
  const std::string &message() const { return message_; }

 private:
  static std::string Locate(const std::string &file, const std::string &ptr) {
    std::string where = file.empty() ? std::string("<input>") : file;
    return where + " at " + (ptr.empty() ? std::string("/") : ptr) + ": ";
  }

  std::string file_;
  std::string pointer_;
  std::string message_;
};

}  // namespace timeline

#endif  // TIMELINE_ERROR_H_
