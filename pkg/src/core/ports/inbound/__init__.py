# Inbound ports 