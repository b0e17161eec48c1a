#pragma once
// HTTP front end for the workbench handlers. Sweeps run as queued jobs on a
// single worker thread; everything else is answered inline.

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "vbind/workbench.hpp"

namespace httplib {
class Server;
}

namespace vbind {

struct ServerOptions {
  std::filesystem::path runs;
  std::size_t max_body_bytes = 1 << 20;
  std::size_t max_queued_jobs = 16;
  std::size_t max_finished_jobs = 256;  // oldest finished results are evicted
};

class WorkbenchServer {
 public:
  explicit WorkbenchServer(ServerOptions opt);
  ~WorkbenchServer();
  WorkbenchServer(const WorkbenchServer&) = delete;
  WorkbenchServer& operator=(const WorkbenchServer&) = delete;

  /// Binds and returns the port; port 0 picks a free one.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  void listen();
  void stop();

  CheckpointRegistry& registry() { return reg_; }

 private:
  struct Job {
    std::string id;
    SweepJob spec;
    std::string state = "queued";  // queued | running | done | failed
    std::string result;
    int error_status = 0;
    std::string error;
  };

  void routes();
  void worker();
  std::string submit(const SweepJob& job);

  ServerOptions opt_;
  CheckpointRegistry reg_;
  std::unique_ptr<httplib::Server> http_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::shared_ptr<Job>> queue_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::deque<std::string> finished_;
  std::uint64_t next_id_ = 1;
  bool stopping_ = false;
  std::thread worker_;
};

}  // namespace vbind
