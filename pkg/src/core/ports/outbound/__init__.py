# Outbound ports 