# curvant/core/__init__.py
