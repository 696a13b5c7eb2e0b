"""Stand-in external adapter speaking the JSON-line protocol.

Usage: fake_adapter.py MODE [ARG]; see the branches below.
"""

import base64
import json
import sys
import time

mode = sys.argv[1]
arg = sys.argv[2] if len(sys.argv) > 2 else None
request = json.loads(sys.stdin.readline())

if mode == "echo-record":
    # recognize a depiction record by reading the SMILES it embeds
    record = json.loads(base64.b64decode(request["image_b64"]))
    reply = {"ok": True, "value": record["smiles"]}
elif mode == "constant":
    reply = {"ok": True, "value": arg}
elif mode == "render-record":
    payload = json.dumps({"kind": "depiction_record", "smiles": request["smiles"]}).encode()
    reply = {"ok": True, "value": base64.b64encode(payload).decode()}
elif mode == "render-empty":
    reply = {"ok": True, "value": ""}
elif mode == "score":
    reply = {"ok": True, "value": float(arg)}
elif mode == "refuse":
    reply = {"ok": False, "error": "model not loaded"}
elif mode == "sleep":
    time.sleep(float(arg))
    reply = {"ok": True, "value": "C"}
elif mode == "crash":
    sys.exit(4)
else:
    print("not json")
    sys.exit(0)

print(json.dumps(reply))
