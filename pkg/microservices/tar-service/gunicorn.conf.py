# gunicorn.conf.py
# Gunicorn settings for tar-service

import os
import sys

# app.py lives next to this file
sys.path.append(os.path.abspath(os.path.dirname(__file__)))

port = int(os.getenv('TARKIT_SERVICE_PORT', 8400))

# --- Gunicorn Settings ---
bind = f"0.0.0.0:{port}"
# metrics live in a per-process registry: keep a single worker so /metrics sees every request
workers = 1
threads = int(os.getenv('TARKIT_SERVICE_THREADS', 4))
# check_all on a few hundred edges can take a while
timeout = 120
keepalive = 5

# --- Logging ---
accesslog = "-"
errorlog = "-"
loglevel = os.getenv('TARKIT_LOG_LEVEL', 'info').lower()


def when_ready(server):
    server.log.info("tar-service listening on port %d (%d threads)", port, threads)


def on_exit(server):
    server.log.info("tar-service is shutting down...")
