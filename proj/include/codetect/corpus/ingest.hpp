#pragma once

#include "codetect/common.hpp"
#include "codetect/corpus/sample.hpp"

#include <istream>
#include <string>
#include <vector>

namespace codetect {

class IngestError : public Error {
public:
    IngestError(std::size_t line, const std::string& what)
        : Error(ErrorKind::validation, "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads JSONL sample records in file order. Blank lines are skipped.
std::vector<CodeSample> ingest_jsonl(std::istream& in);
std::vector<CodeSample> ingest(const std::string& path);

std::string to_jsonl_line(const CodeSample& s);
void write_jsonl(const std::string& path, const std::vector<CodeSample>& samples);

}  // namespace codetect
