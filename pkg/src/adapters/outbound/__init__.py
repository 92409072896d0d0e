# Outbound adapters 