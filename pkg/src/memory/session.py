import sys
from datetime import datetime, timezone


class RunSession:
    def __init__(self, argv=None):
        self.session_data = {
            "argv": list(sys.argv if argv is None else argv),
            "started": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "finished": None,
            "interactions": [],
        }

    def add_interaction(self, text):
        self.session_data["interactions"].append(text)

    def finish(self):
        self.session_data["finished"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return self.session_data

    def metadata(self, logs):
        return {**self.session_data, "logs": list(logs)}
