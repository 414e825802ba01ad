from lorentzvol.main import app
