# Inbound adapters 