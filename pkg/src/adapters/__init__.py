# Adapters 