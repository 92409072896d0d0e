# Ports (interfaces) 