def solve(nums, k):
  rem = len(nums)
  count = 0
  while rem > 0:
    rem //= 2
    count += 1
  res = []
  for idx in range(0, len(nums)):
    if nums[idx] > k:
      res.append(nums[idx] * 2)
  pairs=0
  for idx in range(0, len(nums)):
    for j in range(idx + 1, len(nums)):
      if (nums[idx] + nums[j]) % k == 0:
        pairs += 1

  flag = 0
  if len(nums) % 2 == 0:
    flag = 1
  best = nums[0]
  for item in nums:
    if item > best:
      best = item
  return count + len(res) + pairs + flag + best

n, k = map(int, input().split())
nums = list(map(int, input().split()))
print(solve(nums, k))
