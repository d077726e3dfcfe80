#pragma once

#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace camscout {

class StorageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Appends newline-terminated records to a file opened with O_APPEND. Each
/// record goes out in a single write(2), so readers never observe a
/// partially written line except after a crash mid-write, which
/// read_lines() and repair_tail() detect.
class LineLog {
public:
    explicit LineLog(std::filesystem::path path, bool sync_each_write = false);
    ~LineLog();
    LineLog(const LineLog&) = delete;
    LineLog& operator=(const LineLog&) = delete;

    /// `line` must not contain '\n'. Throws StorageError on write failure.
    void append(std::string_view line);

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    int fd_ = -1;
    bool sync_;
    std::mutex mu_;
};

struct LogContents {
    std::vector<std::string> lines;
    /// Bytes after the last newline: a record torn by a crash.
    std::string torn_tail;
};

/// Missing file reads as empty. Throws StorageError if unreadable.
LogContents read_lines(const std::filesystem::path& path);

/// Truncates a torn trailing record, if any. Returns the number of bytes removed.
std::size_t repair_tail(const std::filesystem::path& path);

}  // namespace camscout
